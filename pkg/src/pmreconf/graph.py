"""Multigraphs, perfect matchings and alternating cycles.

Edges are identified by their position in the edge list, so parallel edges
are distinct objects. Matchings and cycles are frozensets of edge ids.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError

Matching = frozenset
Cycle = frozenset


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.vertex_count < 0:
            raise InputError("negative vertex count")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"edge {i} = ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise InputError(f"edge {i} is a loop at {u}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple:
        """incidence[v] = ascending tuple of (edge id, other endpoint)."""
        inc = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((i, v))
            inc[v].append((i, u))
        return tuple(tuple(a) for a in inc)

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def endpoints(self, eids: Iterable[int]) -> set:
        out = set()
        for e in eids:
            out.update(self.edges[e])
        return out

    def check_ids(self, eids: Iterable[int]) -> frozenset:
        s = frozenset(eids)
        for e in s:
            if not isinstance(e, int) or not 0 <= e < len(self.edges):
                raise InputError(f"invalid edge id {e!r}")
        return s


def validate_perfect_matching(g: Multigraph, m: Iterable[int]) -> bool:
    m = g.check_ids(m)
    covered = [0] * g.vertex_count
    for e in m:
        u, v = g.edges[e]
        covered[u] += 1
        covered[v] += 1
    return all(c == 1 for c in covered)


def is_simple_cycle(g: Multigraph, c: Iterable[int]) -> bool:
    c = g.check_ids(c)
    if not c:
        return False
    deg = defaultdict(list)
    for e in c:
        u, v = g.edges[e]
        deg[u].append(e)
        deg[v].append(e)
    if any(len(es) != 2 for es in deg.values()):
        return False
    # connectivity: walk from one edge around
    start = min(c)
    v = g.edges[start][0]
    prev, seen = start, {start}
    v = g.other(start, v)
    while True:
        a, b = deg[v]
        nxt = b if a == prev else a
        if nxt == start:
            break
        seen.add(nxt)
        v = g.other(nxt, v)
        prev = nxt
    return len(seen) == len(c)


def is_alternating_cycle(g: Multigraph, m: Iterable[int], c: Iterable[int]) -> bool:
    c = frozenset(c)
    if not is_simple_cycle(g, c):
        raise InputError("not a simple cycle")
    m = frozenset(m)
    hits = defaultdict(int)
    for e in c & m:
        u, v = g.edges[e]
        hits[u] += 1
        hits[v] += 1
    # on a simple cycle, alternation <=> every cycle vertex has exactly one m-edge on it
    return all(hits[v] == 1 for v in g.endpoints(c))


def flip(g: Multigraph, m: Iterable[int], c: Iterable[int]) -> frozenset:
    m, c = frozenset(m), frozenset(c)
    if not is_alternating_cycle(g, m, c):
        raise PreconditionError("cycle is not alternating for the current matching")
    return m ^ c


def edge_components(g: Multigraph, eids: Iterable[int]) -> list:
    """Connected components of an edge subset, as sorted lists of edge ids."""
    eids = sorted(set(eids))
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in eids:
        for v in g.edges[e]:
            parent.setdefault(v, v)
        a, b = find(g.edges[e][0]), find(g.edges[e][1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for e in eids:
        groups[find(g.edges[e][0])].append(e)
    return sorted(groups.values(), key=lambda es: es[0])


def symmetric_difference_cycles(g: Multigraph, m: Iterable[int], n: Iterable[int]) -> list:
    diff = frozenset(m) ^ frozenset(n)
    cycles = [frozenset(es) for es in edge_components(g, diff)]
    for c in cycles:
        if not is_simple_cycle(g, c):
            raise PreconditionError("symmetric difference is not a union of cycles")
    return cycles


def biconnected_components(g: Multigraph) -> list:
    """Blocks of g as (vertex frozenset, edge-id frozenset), ordered by smallest edge id.

    Iterative Tarjan over edge ids; parallel edges are told apart by id, so a
    pair of parallel edges forms (or joins) a block.
    """
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    blocks = []
    timer = 0
    inc = g.incidence
    for root in range(n):
        if disc[root] != -1 or not inc[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack = []
        # frame: (vertex, parent edge id, next incidence index)
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, pe, i = frame
            if i < len(inc[v]):
                frame[2] += 1
                e, w = inc[v][i]
                if e == pe:
                    continue
                if disc[w] == -1:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, e, 0])
                elif disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        es = []
                        while True:
                            e = edge_stack.pop()
                            es.append(e)
                            if e == pe:
                                break
                        blocks.append((frozenset(g.endpoints(es)), frozenset(es)))
    blocks.sort(key=lambda b: min(b[1]))
    return blocks


@dataclass(frozen=True)
class ReconfigSequence:
    matchings: tuple
    cycles: tuple = field(default=())

    def __len__(self):
        return len(self.cycles)

    @property
    def length(self) -> int:
        return len(self.cycles)

    @classmethod
    def from_cycles(cls, g: Multigraph, start: Iterable[int], cycles: Sequence) -> "ReconfigSequence":
        cur = frozenset(start)
        ms = [cur]
        for c in cycles:
            cur = flip(g, cur, c)
            ms.append(cur)
        return cls(tuple(ms), tuple(frozenset(c) for c in cycles))

    def validate(self, g: Multigraph, start=None, end=None) -> bool:
        if len(self.matchings) != len(self.cycles) + 1:
            return False
        if start is not None and self.matchings[0] != frozenset(start):
            return False
        if end is not None and self.matchings[-1] != frozenset(end):
            return False
        if not all(validate_perfect_matching(g, m) for m in self.matchings):
            return False
        for prev, c, nxt in zip(self.matchings, self.cycles, self.matchings[1:]):
            if not is_simple_cycle(g, c) or not is_alternating_cycle(g, prev, c):
                return False
            if prev ^ c != nxt:
                return False
        return True


def naive_sequence(g: Multigraph, m: Iterable[int], n: Iterable[int]) -> ReconfigSequence:
    """Flip the cycles of m xor n one at a time: the trivial upper bound."""
    return ReconfigSequence.from_cycles(g, m, symmetric_difference_cycles(g, m, n))


def is_bipartite(g: Multigraph) -> bool:
    color = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for _, w in g.incidence[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def max_degree(g: Multigraph) -> int:
    return max((len(a) for a in g.incidence), default=0)


def subgraph(g: Multigraph, eids: Iterable[int], vertex_order=None):
    """Edge-induced subgraph with compacted ids.

    Returns (graph, vertex map new->old, edge map new->old). New vertex ids follow
    ``vertex_order`` when given, otherwise ascending old id.
    """
    eids = sorted(set(eids))
    if vertex_order is None:
        vertex_order = sorted(g.endpoints(eids))
    vindex = {v: i for i, v in enumerate(vertex_order)}
    edges = [(vindex[g.edges[e][0]], vindex[g.edges[e][1]]) for e in eids]
    return Multigraph(len(vertex_order), tuple(edges)), tuple(vertex_order), tuple(eids)
