"""Problem instances and a seeded generator of random outerplanar ones."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InputError
from .graph import Multigraph, validate_perfect_matching
from .oracle import enumerate_perfect_matchings

# above this many vertices matchings are drawn by random-weight maximum matching
UNIFORM_SAMPLING_MAX_N = 24


@dataclass(frozen=True)
class SpmrInstance:
    graph: Multigraph
    m: frozenset
    n: frozenset
    # optional cyclic outer orders, one per connected component
    outer_orders: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "m", frozenset(self.m))
        object.__setattr__(self, "n", frozenset(self.n))
        object.__setattr__(self, "outer_orders", tuple(tuple(o) for o in self.outer_orders))
        for name in ("m", "n"):
            if not validate_perfect_matching(self.graph, getattr(self, name)):
                raise InputError(f"{name} is not a perfect matching")


def _random_chords(n: int, density: float, rng: random.Random) -> list:
    chords = []
    stack = [(0, n - 1)]
    while stack:
        a, b = stack.pop()
        if b - a < 2:
            continue
        k = rng.randint(a + 1, b - 1)
        if k - a >= 2 and rng.random() < density:
            chords.append((a, k))
        if b - k >= 2 and rng.random() < density:
            chords.append((k, b))
        stack.append((k, b))
        stack.append((a, k))
    return sorted(chords)


def _weighted_matching(g: Multigraph, rng: random.Random) -> frozenset:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    for e, (u, v) in enumerate(g.edges):
        w = rng.random()
        if not h.has_edge(u, v) or h[u][v]["weight"] < w:
            h.add_edge(u, v, weight=w, eid=e)
    mate = nx.max_weight_matching(h, maxcardinality=True)
    return frozenset(h[u][v]["eid"] for u, v in mate)


def random_outerplanar_instance(n: int, chord_density: float = 0.3, seed=None, parallel: float = 0.0) -> SpmrInstance:
    """Outer cycle 0..n-1 with random non-crossing chords and two distinct perfect matchings.

    Each edge is duplicated with probability ``parallel``. Matchings are uniform
    over all perfect matchings for n <= UNIFORM_SAMPLING_MAX_N.
    """
    if n < 4 or n % 2:
        raise InputError("n must be an even integer >= 4")
    if not 0 <= chord_density <= 1 or not 0 <= parallel <= 1:
        raise InputError("densities must lie in [0, 1]")
    rng = random.Random(seed)
    while True:
        base = [(i, (i + 1) % n) for i in range(n)] + _random_chords(n, chord_density, rng)
        edges = list(base)
        for e in base:
            if rng.random() < parallel:
                edges.append(e)
        g = Multigraph(n, tuple(edges))
        if n <= UNIFORM_SAMPLING_MAX_N:
            pms = enumerate_perfect_matchings(g)
            if len(pms) < 2:
                continue
            i, j = rng.sample(range(len(pms)), 2)
            m, nn = pms[i], pms[j]
        else:
            m = _weighted_matching(g, rng)
            nn = _weighted_matching(g, rng)
            for _ in range(20):
                if nn != m:
                    break
                nn = _weighted_matching(g, rng)
            if nn == m or not validate_perfect_matching(g, m):
                continue
        return SpmrInstance(g, m, nn, (tuple(range(n)),))
