"""Outerplane embeddings, their inner faces, and the weak dual tree with lengths.

An embedding is given by the cyclic order of the vertices along the outer cycle.
Position ``i`` of ``outer_order`` is joined to position ``i + 1`` (mod k) by
``outer_edge_ids[i]``; every other edge is a chord. A chord between positions
p < q encloses the outer edges p .. q-1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import DegenerateError, DomainError, InternalError, PreconditionError, StructureError
from .graph import Multigraph, biconnected_components, is_simple_cycle


@dataclass(frozen=True)
class OuterplaneEmbedding:
    graph: Multigraph
    outer_order: tuple
    outer_edge_ids: tuple
    chord_ids: tuple

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.outer_order)}

    def span(self, chord: int) -> tuple:
        p, q = (self.position[v] for v in self.graph.edges[chord])
        return (p, q) if p < q else (q, p)

    @property
    def size(self) -> int:
        return len(self.outer_order)


def _check_two_connected(g: Multigraph):
    blocks = biconnected_components(g)
    if g.edge_count < 2 or len(blocks) != 1 or len(blocks[0][0]) != g.vertex_count:
        raise StructureError("graph is not 2-connected")


def embedding_from_order(g: Multigraph, order: Iterable[int]) -> OuterplaneEmbedding:
    """Embedding whose outer cycle visits ``order``; among parallel edges the lowest id is outer."""
    order = tuple(order)
    k = len(order)
    used = set()
    outer = []
    for i in range(k):
        a, b = order[i], order[(i + 1) % k]
        cands = [e for e, w in g.incidence[a] if w == b and e not in used]
        if not cands:
            raise DomainError(f"no edge between consecutive outer vertices {a} and {b}")
        used.add(cands[0])
        outer.append(cands[0])
    chords = tuple(e for e in range(g.edge_count) if e not in used)
    return OuterplaneEmbedding(g, order, tuple(outer), chords)


def _chords_cross(emb: OuterplaneEmbedding) -> bool:
    spans = sorted(emb.span(c) for c in emb.chord_ids)
    # sweep by left end; an open chord must close before any chord opened after it closes
    stack = []
    for p, q in sorted(spans, key=lambda s: (s[0], -s[1])):
        while stack and stack[-1] <= p:
            stack.pop()
        if stack and q > stack[-1]:
            return True
        stack.append(q)
    return False


def validate_embedding(emb: OuterplaneEmbedding) -> bool:
    g = emb.graph
    _check_two_connected(g)
    k = len(emb.outer_order)
    if sorted(emb.outer_order) != list(range(g.vertex_count)):
        return False
    if len(emb.outer_edge_ids) != k or len(set(emb.outer_edge_ids)) != k:
        return False
    for i, e in enumerate(emb.outer_edge_ids):
        a, b = emb.outer_order[i], emb.outer_order[(i + 1) % k]
        if not 0 <= e < g.edge_count or set(g.edges[e]) != {a, b}:
            return False
    if set(emb.chord_ids) | set(emb.outer_edge_ids) != set(range(g.edge_count)):
        return False
    if set(emb.chord_ids) & set(emb.outer_edge_ids):
        return False
    return not _chords_cross(emb)


def _connected_without(g: Multigraph, removed: set) -> bool:
    rest = [v for v in range(g.vertex_count) if v not in removed]
    if not rest:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for _, w in g.incidence[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(rest)


def find_outer_order(g: Multigraph) -> OuterplaneEmbedding:
    """Recover an outerplane embedding of a 2-connected multigraph.

    The outer cycle is the unique Hamiltonian cycle. For k >= 4 vertices an
    adjacent pair {u, v} lies on it exactly when g - {u, v} stays connected
    (a chord separates its two arcs). Raises DomainError if g is not outerplanar.
    """
    _check_two_connected(g)
    k = g.vertex_count
    simple = {tuple(sorted(e)) for e in g.edges}
    if k >= 3 and len(simple) > 2 * k - 3:
        raise DomainError("too many edges for an outerplanar graph")
    if k <= 3:
        order = tuple(range(k))
    else:
        nbrs = {v: [] for v in range(k)}
        for u, v in sorted(simple):
            if _connected_without(g, {u, v}):
                nbrs[u].append(v)
                nbrs[v].append(u)
        if any(len(ws) != 2 for ws in nbrs.values()):
            raise DomainError("graph is not outerplanar")
        order = [0, min(nbrs[0])]
        while len(order) < k:
            a, b = nbrs[order[-1]]
            nxt = b if a == order[-2] else a
            if nxt == 0:
                raise DomainError("graph is not outerplanar")
            order.append(nxt)
        order = tuple(order)
    emb = embedding_from_order(g, order)
    if not validate_embedding(emb):
        raise DomainError("graph is not outerplanar")
    return emb


@dataclass(frozen=True)
class Face:
    id: int
    edges: frozenset
    outer_edges: frozenset
    chord: int | None  # chord that closes the face from outside; None for the last face


@dataclass(frozen=True)
class FaceSet:
    embedding: OuterplaneEmbedding
    faces: tuple
    chord_faces: dict  # chord id -> (face inside its span, face outside)

    def __len__(self):
        return len(self.faces)


def enumerate_faces(emb: OuterplaneEmbedding) -> FaceSet:
    k = emb.size
    outer_set = frozenset(emb.outer_edge_ids)
    # segments keyed by start position: start -> (end, edge id)
    seg = {i: (i + 1, e) for i, e in enumerate(emb.outer_edge_ids)}
    owner = {}
    faces = []
    chords = sorted(emb.chord_ids, key=lambda c: (emb.span(c)[1] - emb.span(c)[0], c))
    for c in chords:
        p, q = emb.span(c)
        items = []
        s = p
        while s < q:
            end, e = seg.pop(s)
            items.append(e)
            s = end
        if s != q:
            raise InternalError("crossing chords in face sweep")
        seg[p] = (q, c)
        fid = len(faces)
        for e in items:
            owner[e] = fid
        items.append(c)
        fs = frozenset(items)
        faces.append(Face(fid, fs, fs & outer_set, c))
    items = []
    s = 0
    while s < k:
        end, e = seg.pop(s)
        items.append(e)
        s = end
    fid = len(faces)
    for e in items:
        owner[e] = fid
    fs = frozenset(items)
    faces.append(Face(fid, fs, fs & outer_set, None))
    chord_faces = {f.chord: (f.id, owner[f.chord]) for f in faces if f.chord is not None}
    return FaceSet(emb, tuple(faces), chord_faces)


@dataclass(frozen=True)
class DualEdge:
    u: int
    v: int
    length: int
    chord: int | None = None  # chord id for chord duals
    face: int | None = None  # face id for mirror edges


@dataclass(frozen=True)
class DualTree:
    """Inner faces are nodes 0..F-1; mirror copies of outer-touching faces follow."""

    faceset: FaceSet
    edges: tuple
    mirror_of: dict  # face id -> mirror node
    face_class: dict  # outer-touching face id -> 1 (boundary paths in m xor n) or 2

    @property
    def inner_count(self) -> int:
        return len(self.faceset.faces)

    @property
    def node_count(self) -> int:
        return self.inner_count + len(self.mirror_of)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [[] for _ in range(self.node_count)]
        for i, d in enumerate(self.edges):
            adj[d.u].append((d.v, d.length, i))
            adj[d.v].append((d.u, d.length, i))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def chord_edge(self) -> dict:
        return {d.chord: i for i, d in enumerate(self.edges) if d.chord is not None}

    def distances(self, src: int) -> list:
        dist = [-1] * self.node_count
        dist[src] = 0
        stack = [src]
        while stack:
            v = stack.pop()
            for w, length, _ in self.adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + length
                    stack.append(w)
        return dist

    def diameter(self) -> int:
        d0 = self.distances(0)
        far = max(range(self.node_count), key=d0.__getitem__)
        return max(self.distances(far))


def build_dual(emb: OuterplaneEmbedding, m: Iterable[int], n: Iterable[int], faceset: FaceSet | None = None) -> DualTree:
    m, n = frozenset(m), frozenset(n)
    fs = faceset if faceset is not None else enumerate_faces(emb)
    diff = m ^ n
    edges = []
    for c in sorted(fs.chord_faces):
        a, b = fs.chord_faces[c]
        edges.append(DualEdge(a, b, (c in m) + (c in n), chord=c))
    mirror_of = {}
    face_class = {}
    base = len(fs.faces)
    for f in fs.faces:
        if not f.outer_edges:
            continue
        flags = {e in diff for e in f.outer_edges}
        if len(flags) != 1:
            raise InternalError(
                f"outer paths of face {f.id} disagree on membership in m xor n",
                dump={"face": sorted(f.edges), "m": sorted(m), "n": sorted(n)},
            )
        cls = 1 if flags.pop() else 2
        face_class[f.id] = cls
        mirror_of[f.id] = base + len(mirror_of)
        edges.append(DualEdge(f.id, mirror_of[f.id], 1 if cls == 1 else 0, face=f.id))
    return DualTree(fs, tuple(edges), mirror_of, face_class)


def gap(dual: DualTree) -> int:
    """Weighted diameter of the dual tree (double sweep)."""
    if dual.inner_count < 2:
        raise DegenerateError("gap is undefined for a chordless cycle (one inner face)")
    return dual.diameter()


def is_connected_face_set(dual: DualTree, x_star: Iterable[int]) -> bool:
    xs = set(x_star)
    if not xs:
        return False
    start = min(xs)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, _, i in dual.adjacency[v]:
            if w in xs and w not in seen and dual.edges[i].chord is not None:
                seen.add(w)
                stack.append(w)
    return seen == xs


def cut_to_cycle(dual: DualTree, x_star: Iterable[int]) -> frozenset:
    """Primal cycle dual to the cut around a connected set of inner faces."""
    xs = set(x_star)
    if not xs or any(not 0 <= x < dual.inner_count for x in xs):
        raise PreconditionError("x_star must be a nonempty set of inner faces")
    if not is_connected_face_set(dual, xs):
        raise PreconditionError("x_star does not induce a connected subtree")
    cyc = frozenset()
    for x in xs:
        cyc ^= dual.faceset.faces[x].edges
    if not is_simple_cycle(dual.faceset.embedding.graph, cyc):
        raise InternalError("cut does not correspond to a simple cycle", dump={"x_star": sorted(xs)})
    return cyc


def center_faces(dual: DualTree, radius: int) -> list:
    """Inner faces whose eccentricity is at most ``radius``, ascending id."""
    # eccentricity of v = max(dist to a, dist to b) for a diametral pair (a, b)
    d0 = dual.distances(0)
    a = max(range(dual.node_count), key=d0.__getitem__)
    da = dual.distances(a)
    b = max(range(dual.node_count), key=da.__getitem__)
    db = dual.distances(b)
    return [v for v in range(dual.inner_count) if max(da[v], db[v]) <= radius]


def restrict_embedding(emb: OuterplaneEmbedding, keep_vertices, outer_edges: Iterable[int], keep_edges: Iterable[int]):
    """Compact sub-embedding. Returns (embedding, edge map new->old).

    ``keep_vertices`` are taken in the cyclic order of ``emb``; consecutive kept
    vertices are joined by the unique edge of ``outer_edges`` between them.
    In the result vertex i sits at outer position i.
    """
    g = emb.graph
    kv = set(keep_vertices)
    order = [v for v in emb.outer_order if v in kv]
    vindex = {v: i for i, v in enumerate(order)}
    k = len(order)
    outer_edges = list(outer_edges)
    by_pair = {}
    for e in outer_edges:
        by_pair.setdefault(frozenset(g.edges[e]), []).append(e)
    new_outer_old = []
    for i in range(k):
        key = frozenset((order[i], order[(i + 1) % k]))
        lst = by_pair.get(key)
        if not lst:
            raise InternalError("restricted outer cycle is broken")
        new_outer_old.append(lst.pop(0))
    chords_old = sorted(set(keep_edges) - set(new_outer_old))
    emap = tuple(new_outer_old) + tuple(chords_old)
    edges = tuple((vindex[g.edges[e][0]], vindex[g.edges[e][1]]) for e in emap)
    sub = Multigraph(k, edges)
    new = OuterplaneEmbedding(sub, tuple(range(k)), tuple(range(k)), tuple(range(k, len(emap))))
    return new, emap
