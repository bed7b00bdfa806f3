import itertools

import networkx as nx
import pytest

from conftest import polygon
from pmreconf.errors import PreconditionError, SizeError
from pmreconf.graph import Multigraph, is_alternating_cycle, is_simple_cycle
from pmreconf.instances import random_outerplanar_instance
from pmreconf.oracle import alternating_cycles, bfs_shortest, enumerate_perfect_matchings, t_star_at_most_two


def _complete(k):
    return Multigraph(k, tuple(itertools.combinations(range(k), 2)))


def _ladder(rungs):
    g = nx.ladder_graph(rungs)
    return Multigraph(2 * rungs, tuple(g.edges()))


@pytest.mark.parametrize(
    "g, count",
    [
        (polygon(8), 2),
        (_complete(4), 3),
        (_complete(6), 15),  # 5!!
        (_ladder(5), 8),  # Fibonacci
        (_ladder(6), 13),
        (polygon(5), 0),
    ],
)
def test_perfect_matching_counts(g, count):
    pms = enumerate_perfect_matchings(g)
    assert len(pms) == count
    assert len(set(pms)) == count


def test_matching_cap():
    with pytest.raises(SizeError):
        enumerate_perfect_matchings(_complete(8), cap=10)


def _brute_alternating(g, m):
    out = set()
    for r in range(2, g.edge_count + 1):
        for sub in itertools.combinations(range(g.edge_count), r):
            if is_simple_cycle(g, sub) and is_alternating_cycle(g, m, sub):
                out.add(frozenset(sub))
    return out


@pytest.mark.parametrize("seed", range(8))
def test_alternating_cycles_against_subset_enumeration(seed):
    inst = random_outerplanar_instance(6 + 2 * (seed % 2), 0.7, seed, parallel=0.2 * (seed % 3))
    while inst.graph.edge_count > 14:
        seed += 100
        inst = random_outerplanar_instance(6, 0.7, seed, parallel=0.2)
    got = list(alternating_cycles(inst.graph, inst.m))
    assert len(got) == len(set(got))
    assert set(got) == _brute_alternating(inst.graph, inst.m)


def test_bfs_on_small_cases():
    g = polygon(4)
    assert bfs_shortest(g, {0, 2}, {1, 3})[0] == 1
    assert bfs_shortest(g, {0, 2}, {0, 2})[0] == 0
    opt, seq = bfs_shortest(_ladder(4), *enumerate_perfect_matchings(_ladder(4))[:2])
    assert seq.validate(_ladder(4)) and len(seq) == opt


def test_bfs_cap():
    g = _ladder(10)
    pms = enumerate_perfect_matchings(g)
    with pytest.raises(SizeError):
        bfs_shortest(g, pms[0], pms[-1], cap=3)


def test_t_star_preconditions_and_values():
    g = polygon(4)
    with pytest.raises(PreconditionError):
        t_star_at_most_two(g, {0, 2}, {0, 2})
    with pytest.raises(PreconditionError):
        t_star_at_most_two(g, {0, 2}, {1, 3})


def test_t_star_agrees_with_bfs():
    checked = 0
    seed = 0
    while checked < 40:
        seed += 1
        inst = random_outerplanar_instance(8 + 2 * (seed % 3), 0.8, seed)
        g, m, n = inst.graph, inst.m, inst.n
        if is_simple_cycle(g, m ^ n):
            continue
        opt, _ = bfs_shortest(g, m, n)
        assert t_star_at_most_two(g, m, n) == (opt == 2), seed
        checked += 1


def test_hexagon_with_chord_matchings():
    g = polygon(6, [(0, 3)])
    pms = set(enumerate_perfect_matchings(g))
    assert pms == {frozenset({0, 2, 4}), frozenset({1, 3, 5}), frozenset({6, 1, 4})}


def test_octagon_bfs(octagon):
    opt, seq = bfs_shortest(octagon.graph, octagon.m, octagon.n)
    assert opt == 2 and seq.validate(octagon.graph, octagon.m, octagon.n)


@pytest.mark.parametrize("seed", range(25))
def test_bfs_symmetry_and_bounds(seed):
    from pmreconf.graph import naive_sequence, symmetric_difference_cycles

    inst = random_outerplanar_instance(8 + 2 * (seed % 3), 0.6, seed, parallel=0.1)
    g, m, n = inst.graph, inst.m, inst.n
    opt, _ = bfs_shortest(g, m, n)
    assert bfs_shortest(g, n, m)[0] == opt
    assert opt <= len(naive_sequence(g, m, n))
    assert (opt == 1) == (len(symmetric_difference_cycles(g, m, n)) == 1 and is_simple_cycle(g, m ^ n))
