"""Exhaustive reference solvers for small instances."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .errors import PreconditionError, SizeError
from .graph import Multigraph, ReconfigSequence, is_simple_cycle, validate_perfect_matching

BFS_CAP = 200_000
CYCLE_CAP = 1_000_000


def enumerate_perfect_matchings(g: Multigraph, cap: int = BFS_CAP) -> list:
    """All perfect matchings, branching on the lowest uncovered vertex."""
    out = []
    covered = [False] * g.vertex_count
    chosen = []

    def rec(start):
        v = start
        while v < g.vertex_count and covered[v]:
            v += 1
        if v == g.vertex_count:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise SizeError(f"more than {cap} perfect matchings")
            return
        covered[v] = True
        for e, w in g.incidence[v]:
            if not covered[w]:
                covered[w] = True
                chosen.append(e)
                rec(v + 1)
                chosen.pop()
                covered[w] = False
        covered[v] = False

    if g.vertex_count % 2 == 0:
        rec(0)
    return out


def _mate_edges(g: Multigraph, m: frozenset) -> list:
    mate = [-1] * g.vertex_count
    for e in m:
        u, v = g.edges[e]
        mate[u] = e
        mate[v] = e
    return mate


def alternating_cycles(g: Multigraph, m: Iterable[int], cap: int = CYCLE_CAP) -> Iterator[frozenset]:
    """Every m-alternating cycle exactly once.

    A cycle is generated from its smallest vertex s, leaving s along s's matched
    edge, which fixes its orientation.
    """
    m = frozenset(m)
    mate = _mate_edges(g, m)
    if -1 in mate:
        raise PreconditionError("matching is not perfect")
    count = 0
    on_path = [False] * g.vertex_count
    for s in range(g.vertex_count):
        e0 = mate[s]
        v1 = g.other(e0, s)
        if v1 < s:
            continue
        on_path[s] = on_path[v1] = True
        path = [e0]
        # stack of iterators over non-matching edges at the current path end
        stack = [(v1, iter(g.incidence[v1]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for e, w in it:
                if e in m:
                    continue
                if w == s:
                    count += 1
                    if count > cap:
                        raise SizeError(f"more than {cap} alternating cycles")
                    yield frozenset(path + [e])
                    continue
                if w < s or on_path[w]:
                    continue
                f = mate[w]
                x = g.other(f, w)
                if x < s or on_path[x]:
                    continue
                on_path[w] = on_path[x] = True
                path.extend((e, f))
                stack.append((x, iter(g.incidence[x])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if stack:
                    e, f = path[-2], path[-1]
                    del path[-2:]
                    w = g.other(f, v)
                    on_path[v] = on_path[w] = False
        on_path[s] = on_path[v1] = False


def bfs_shortest(g: Multigraph, m: Iterable[int], n: Iterable[int], cap: int = BFS_CAP):
    """Exact shortest reconfiguration by BFS on the configuration graph.

    Neighbours are generated lazily from the alternating cycles of each visited
    matching; ``cap`` bounds the number of visited matchings.
    """
    m, n = frozenset(m), frozenset(n)
    for x in (m, n):
        if not validate_perfect_matching(g, x):
            raise PreconditionError("not a perfect matching")
    parent = {m: None}
    queue = deque([m])
    while queue:
        cur = queue.popleft()
        if cur == n:
            break
        for c in alternating_cycles(g, cur):
            nxt = cur ^ c
            if nxt not in parent:
                parent[nxt] = (cur, c)
                if len(parent) > cap:
                    raise SizeError(f"BFS visited more than {cap} matchings")
                if nxt == n:
                    queue.clear()
                    break
                queue.append(nxt)
    cycles = []
    cur = n
    while parent[cur] is not None:
        cur, c = parent[cur]
        cycles.append(c)
    cycles.reverse()
    seq = ReconfigSequence.from_cycles(g, m, cycles)
    return len(cycles), seq


def t_star_at_most_two(g: Multigraph, m: Iterable[int], n: Iterable[int], cap: int = CYCLE_CAP) -> bool:
    """Is there a perfect matching adjacent to both m and n?"""
    m, n = frozenset(m), frozenset(n)
    diff = m ^ n
    if not diff or is_simple_cycle(g, diff):
        raise PreconditionError("m and n are equal or already adjacent")
    for c in alternating_cycles(g, m, cap):
        rest = diff ^ c
        if rest and is_simple_cycle(g, rest):
            return True
    return False
