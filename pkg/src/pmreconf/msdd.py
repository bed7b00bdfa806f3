"""Min-sum diameter decomposition of an edge-weighted tree.

Given a tree, a set of deletable edges and nonnegative integer lengths, pick
deletable edges to remove so that the sum of the weighted diameters of the
remaining components is minimum.

The exact algorithm is a bottom-up dynamic program over rooted subtrees. The
state of a partial solution on the subtree ``T_v^j`` (v plus its first j child
subtrees) is (x, y): the depth from v and the diameter of the component that
still contains v. The table stores the least possible sum z of diameters of
the already closed components.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import SizeError, StructureError
from .graph import Multigraph

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class MsddInstance:
    tree: Multigraph
    deletable: frozenset
    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "deletable", frozenset(self.deletable))
        object.__setattr__(self, "lengths", tuple(int(x) for x in self.lengths))
        t = self.tree
        if len(self.lengths) != t.edge_count:
            raise StructureError("one length per tree edge is required")
        if any(x < 0 for x in self.lengths):
            raise StructureError("lengths must be nonnegative")
        if not self.deletable <= set(range(t.edge_count)):
            raise StructureError("deletable edges must be tree edges")
        if t.vertex_count == 0 or t.edge_count != t.vertex_count - 1 or not _connected(t):
            raise StructureError("not a tree")

    @property
    def total_length(self) -> int:
        return sum(self.lengths)


@dataclass(frozen=True)
class MsddSolution:
    deleted: frozenset
    objective: int
    work: int = field(default=0, compare=False)


def _connected(t: Multigraph) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for _, w in t.incidence[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == t.vertex_count


def _distances(t: Multigraph, lengths, src: int, allowed=None) -> dict:
    dist = {src: 0}
    stack = [src]
    while stack:
        v = stack.pop()
        for e, w in t.incidence[v]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[v] + lengths[e]
                stack.append(w)
    return dist


def component_diameter(tree: Multigraph, lengths, component) -> int:
    comp = set(component)
    d0 = _distances(tree, lengths, min(comp), comp)
    far = max(d0, key=lambda v: (d0[v], -v))
    return max(_distances(tree, lengths, far, comp).values())


def decomposition_objective(inst: MsddInstance, deleted) -> int:
    deleted = set(deleted)
    t = inst.tree
    seen = set()
    total = 0
    for s in range(t.vertex_count):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for e, w in t.incidence[v]:
                if e not in deleted and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        total += component_diameter(t, inst.lengths, comp)
    return total


def value_domain(inst: MsddInstance) -> list:
    """All pairwise path lengths; feasible x, y values always lie here."""
    vals = set()
    for v in range(inst.tree.vertex_count):
        vals.update(_distances(inst.tree, inst.lengths, v).values())
    return sorted(vals)


def solve_msdd_bruteforce(inst: MsddInstance, limit: int = BRUTE_FORCE_LIMIT) -> MsddSolution:
    e0 = sorted(inst.deletable)
    if len(e0) > limit:
        raise SizeError(f"{len(e0)} deletable edges exceed the brute-force limit {limit}")
    best = None
    for r in range(len(e0) + 1):
        for sub in combinations(e0, r):
            val = decomposition_objective(inst, sub)
            if best is None or val < best[0]:
                best = (val, frozenset(sub))
    return MsddSolution(best[1], best[0], work=2 ** len(e0))


@dataclass
class _Table:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    # backpointers: rule (0 keep edge, 1 delete edge), cell in T_v^{j-1}, cell in T_{w_j}
    rule: np.ndarray | None = None
    a: np.ndarray | None = None
    b: np.ndarray | None = None

    def __len__(self):
        return len(self.z)

    def as_dict(self) -> dict:
        return {(int(x), int(y)): int(z) for x, y, z in zip(self.x, self.y, self.z)}


def _single() -> _Table:
    one = np.zeros(1, dtype=np.int64)
    return _Table(one, one.copy(), one.copy())


def _rooted(t: Multigraph, root: int = 0):
    parent = [-1] * t.vertex_count
    parent_edge = [-1] * t.vertex_count
    order = [root]
    parent[root] = root
    for v in order:
        for e, w in t.incidence[v]:
            if parent[w] == -1:
                parent[w] = v
                parent_edge[w] = e
                order.append(w)
    children = [[] for _ in range(t.vertex_count)]
    for v in range(t.vertex_count):
        if v != root:
            children[parent[v]].append(v)
    for c in children:
        c.sort()
    return order, children, parent_edge


def _merge(A: _Table, B: _Table, length: int, deletable: bool, in_domain, keep_back: bool):
    la, lb = len(A), len(B)
    X = np.maximum(A.x[:, None], B.x[None, :] + length).ravel()
    Y = np.maximum(np.maximum(A.y[:, None], B.y[None, :]), A.x[:, None] + length + B.x[None, :]).ravel()
    Z = (A.z[:, None] + B.z[None, :]).ravel()
    ai = np.repeat(np.arange(la), lb)
    bi = np.tile(np.arange(lb), la)
    rule = np.zeros(la * lb, dtype=np.int8)
    work = la * lb
    if deletable:
        closed = B.z + B.y
        bstar = int(np.argmin(closed))
        X = np.concatenate([X, A.x])
        Y = np.concatenate([Y, A.y])
        Z = np.concatenate([Z, A.z + closed[bstar]])
        ai = np.concatenate([ai, np.arange(la)])
        bi = np.concatenate([bi, np.full(la, bstar)])
        rule = np.concatenate([rule, np.ones(la, dtype=np.int8)])
        work += la
    if in_domain is not None:
        keep = in_domain[X] & in_domain[Y]
        X, Y, Z, ai, bi, rule = X[keep], Y[keep], Z[keep], ai[keep], bi[keep], rule[keep]
    # per (x, y): least z; ties prefer keeping the edge, then lower source cells
    order = np.lexsort((bi, ai, rule, Z, Y, X))
    X, Y = X[order], Y[order]
    first = np.ones(len(order), dtype=bool)
    first[1:] = (X[1:] != X[:-1]) | (Y[1:] != Y[:-1])
    sel = order[first]
    t = _Table(X[first], Y[first], Z[sel])
    if keep_back:
        t.rule, t.a, t.b = rule[sel], ai[sel], bi[sel]
    return t, work


def _run(inst: MsddInstance, domain: str, keep_back: bool):
    t = inst.tree
    if domain == "full":
        in_domain = None
    elif domain == "restricted":
        in_domain = np.zeros(inst.total_length + 1, dtype=bool)
        in_domain[value_domain(inst)] = True
    else:
        raise ValueError(f"unknown domain {domain!r}")
    order, children, parent_edge = _rooted(t)
    final = [None] * t.vertex_count
    history = {}
    work = 0
    for v in reversed(order):
        table = _single()
        if keep_back:
            history[(v, 0)] = table
        for j, w in enumerate(children[v], start=1):
            e = parent_edge[w]
            table, wk = _merge(table, final[w], inst.lengths[e], e in inst.deletable, in_domain, keep_back)
            work += wk
            if keep_back:
                history[(v, j)] = table
        final[v] = table
    return final, children, parent_edge, history, work


def dp_tables(inst: MsddInstance, domain: str = "full") -> dict:
    """Finite entries of f for every T_v^j, as {(v, j): {(x, y): z}}."""
    _, _, _, history, _ = _run(inst, domain, keep_back=True)
    return {k: tb.as_dict() for k, tb in history.items()}


def solve_msdd(inst: MsddInstance, domain: str = "full", reconstruct: bool = True) -> MsddSolution:
    """Exact optimum. ``domain="restricted"`` limits x, y to realised path lengths."""
    final, children, parent_edge, history, work = _run(inst, domain, keep_back=reconstruct)
    root = final[0]
    totals = root.y + root.z
    best = int(np.argmin(totals))
    objective = int(totals[best])
    if not reconstruct:
        return MsddSolution(frozenset(), objective, work)
    deleted = set()
    stack = [(0, len(children[0]), best)]
    while stack:
        v, j, cell = stack.pop()
        if j == 0:
            continue
        tb = history[(v, j)]
        w = children[v][j - 1]
        if tb.rule[cell] == 1:
            deleted.add(parent_edge[w])
        stack.append((v, j - 1, int(tb.a[cell])))
        stack.append((w, len(children[w]), int(tb.b[cell])))
    return MsddSolution(frozenset(deleted), objective, work)


def random_tree_instance(n: int, max_length: int = 2, p_deletable: float = 0.5, seed=None) -> MsddInstance:
    """Random recursive tree; lengths uniform in 0..max_length."""
    import random

    if n < 1:
        raise StructureError("a tree needs at least one vertex")
    rng = random.Random(seed)
    edges = tuple((rng.randrange(v), v) for v in range(1, n))
    lengths = tuple(rng.randint(0, max_length) for _ in edges)
    deletable = frozenset(e for e in range(len(edges)) if rng.random() < p_deletable)
    return MsddInstance(Multigraph(n, edges), deletable, lengths)
