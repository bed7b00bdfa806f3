import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ids, make_instance, polygon
from pmreconf.embedding import build_dual, embedding_from_order, enumerate_faces, gap, validate_embedding
from pmreconf.errors import DegenerateError, DomainError, InputError, PreconditionError
from pmreconf.graph import Multigraph, is_alternating_cycle, naive_sequence
from pmreconf.instances import SpmrInstance, random_outerplanar_instance
from pmreconf.oracle import bfs_shortest
from pmreconf.solver import (
    disjoint_case_sequence,
    live_blocks,
    one_flip_step,
    opt_value_only,
    residual_gap,
    solve,
    split_pieces,
)


def _emb(inst):
    return embedding_from_order(inst.graph, range(inst.graph.vertex_count))


def test_octagon(octagon):
    rep = solve(octagon)
    assert rep.opt == 2
    (blk,) = rep.blocks
    assert blk.gap == 4 and blk.chosen_F == () and blk.piece_gaps == (4,)
    assert rep.sequence.validate(octagon.graph, octagon.m, octagon.n)


def test_hexagon(hexagon):
    rep = solve(hexagon)
    assert rep.opt == 1 and rep.blocks[0].gap == 2
    assert rep.sequence.cycles == (frozenset(range(6)),)


def test_equal_matchings():
    for seed in range(20):
        inst = random_outerplanar_instance(10, 0.5, seed)
        same = SpmrInstance(inst.graph, inst.m, inst.m, inst.outer_orders)
        rep = solve(same)
        assert rep.opt == 0 and rep.sequence.cycles == ()


def test_chord_only_in_m():
    inst = make_instance(6, [(0, 3)], [(0, 3), (1, 2), (4, 5)], [(0, 1), (2, 3), (4, 5)])
    rep = solve(inst)
    assert rep.opt == 1
    assert all(b.chosen_F == () for b in rep.blocks)


def test_shared_chord_equal_matchings_value_only():
    inst = make_instance(6, [(0, 3)], [(0, 3), (1, 2), (4, 5)], [(0, 3), (1, 2), (4, 5)])
    assert opt_value_only(inst) == 0


def test_unhappy_move():
    """The chord 0-9 lies in both matchings, yet every shortest sequence flips it.

    Each side of the chord carries two alternating 4-cycles. Keeping the chord
    gives a dual diameter of 6 (three flips); cutting it leaves two pieces of
    gap 4 each (four flips, the naive count).
    """
    chords = [(0, 9), (1, 4), (5, 8), (10, 13), (14, 17)]
    m = [(0, 9), (1, 2), (3, 4), (5, 6), (7, 8), (10, 11), (12, 13), (14, 15), (16, 17)]
    n = [(0, 9), (2, 3), (1, 4), (6, 7), (5, 8), (11, 12), (10, 13), (15, 16), (14, 17)]
    inst = make_instance(18, chords, m, n)
    rep = solve(inst)
    assert rep.opt == 3 == bfs_shortest(inst.graph, inst.m, inst.n)[0]
    assert len(naive_sequence(inst.graph, inst.m, inst.n)) == 4
    (blk,) = rep.blocks
    assert blk.gap == 6 and blk.chosen_F == ()
    shared = ids(inst.graph, [(0, 9)])
    assert any(shared <= c for c in rep.sequence.cycles)


def test_one_flip_step_hexagon(hexagon):
    emb = _emb(hexagon)
    c = one_flip_step(emb, hexagon.m, hexagon.n)
    assert c == frozenset(range(6))


def test_one_flip_step_octagon_halves_gap(octagon):
    emb = _emb(octagon)
    c = one_flip_step(emb, octagon.m, octagon.n)
    assert c in ({0, 1, 2, 8}, {4, 5, 6, 9}, frozenset(range(8)))
    assert is_alternating_cycle(octagon.graph, octagon.m, c)
    assert gap(build_dual(emb, octagon.m ^ c, octagon.n)) == 2


def test_one_flip_step_preconditions(hexagon):
    emb = _emb(hexagon)
    with pytest.raises(PreconditionError):
        one_flip_step(emb, hexagon.m, hexagon.m)
    shared = make_instance(6, [(0, 3)], [(0, 3), (1, 2), (4, 5)], [(0, 3), (1, 2), (4, 5)])
    with pytest.raises(PreconditionError):
        one_flip_step(_emb(shared), shared.m, shared.n)


def test_disjoint_case_sequence(octagon, hexagon):
    assert len(disjoint_case_sequence(_emb(octagon), octagon.m, octagon.n)) == 2
    assert len(disjoint_case_sequence(_emb(hexagon), hexagon.m, hexagon.n)) == 1
    c6 = SpmrInstance(polygon(6), {0, 2, 4}, {1, 3, 5})
    with pytest.raises(DegenerateError):
        disjoint_case_sequence(_emb(c6), c6.m, c6.n)


def test_plain_gap_overcounts_settled_chords():
    """One flip reaches n, yet the plain gap of (n, n) is 2 because n uses a chord."""
    inst = make_instance(6, [(0, 3)], [(0, 1), (2, 3), (4, 5)], [(1, 2), (3, 0), (4, 5)])
    emb = _emb(inst)
    assert gap(build_dual(emb, inst.m, inst.n)) == 2
    assert gap(build_dual(emb, inst.n, inst.n)) == 2
    assert residual_gap(emb, inst.n, inst.n) == 0
    seq = disjoint_case_sequence(emb, inst.m, inst.n)
    assert len(seq) == 1 and bfs_shortest(inst.graph, inst.m, inst.n)[0] == 1


def test_parallel_chord_instance():
    g = Multigraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 1)))
    inst = SpmrInstance(g, {1, 3}, {2, 4}, ((0, 1, 2, 3),))
    rep = solve(inst)
    assert rep.opt == 1 and rep.sequence.validate(g, inst.m, inst.n)


def test_split_pieces_along_chord(octagon):
    pieces = split_pieces(_emb(octagon), [8])
    assert [sorted(emap) for _, emap in pieces] == [[0, 1, 2, 8], [3, 4, 5, 6, 7, 8, 9]]
    for pemb, _ in pieces:
        assert validate_embedding(pemb)


def test_live_blocks_drop_dead_edges():
    # two squares joined by the edge 3-4; both its ends are matched inside their squares
    g = Multigraph(8, ((0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4)))
    m = ids(g, [(0, 1), (2, 3), (4, 5), (6, 7)])
    n = ids(g, [(1, 2), (3, 0), (5, 6), (7, 4)])
    inst = SpmrInstance(g, m, n)
    blocks = live_blocks(inst)
    assert sorted(sorted(es) for _, es in blocks) == [[0, 1, 2, 3], [5, 6, 7, 8]]
    assert solve(inst).opt == 2


def test_hint_is_optional_and_checked(octagon):
    plain = SpmrInstance(octagon.graph, octagon.m, octagon.n)
    assert solve(plain).opt == 2
    wrong = SpmrInstance(octagon.graph, octagon.m, octagon.n, ((0, 2, 1, 3, 4, 5, 6, 7),))
    assert solve(wrong).opt == 2


def test_non_outerplanar_block_rejected():
    g = Multigraph(4, tuple(itertools.combinations(range(4), 2)))
    pm = [frozenset(e for e, uv in enumerate(g.edges) if uv in pair) for pair in (((0, 1), (2, 3)), ((0, 2), (1, 3)))]
    with pytest.raises(DomainError):
        solve(SpmrInstance(g, pm[0], pm[1]))


def test_generator_basics():
    c4 = random_outerplanar_instance(4, 0.0, 1)
    assert c4.graph.edges == ((0, 1), (1, 2), (2, 3), (3, 0))
    assert {c4.m, c4.n} == {frozenset({0, 2}), frozenset({1, 3})}
    assert random_outerplanar_instance(12, 0.5, 9) == random_outerplanar_instance(12, 0.5, 9)
    with pytest.raises(InputError):
        random_outerplanar_instance(7)
    for seed in range(300):
        inst = random_outerplanar_instance(4 + 2 * (seed % 8), (seed % 5) / 4, seed, parallel=0.1 * (seed % 3))
        assert validate_embedding(_emb(inst))


def test_generator_large_n_uses_weighted_matchings():
    inst = random_outerplanar_instance(60, 0.5, 2)
    assert inst.m != inst.n
    assert opt_value_only(inst) == solve(inst).opt


instances = st.builds(
    random_outerplanar_instance,
    n=st.sampled_from([4, 6, 8, 10, 12]),
    chord_density=st.sampled_from([0.0, 0.3, 0.7, 1.0]),
    seed=st.integers(0, 10**6),
    parallel=st.sampled_from([0.0, 0.0, 0.2, 0.5]),
)


@settings(max_examples=200, deadline=None)
@given(instances)
def test_solve_matches_oracle(inst):
    g, m, n = inst.graph, inst.m, inst.n
    rep = solve(inst)
    opt, _ = bfs_shortest(g, m, n)
    assert rep.opt == opt
    assert rep.sequence.validate(g, m, n) and len(rep.sequence) == opt
    assert opt_value_only(inst) == opt
    assert solve(inst, domain="restricted").opt == opt
    assert opt <= len(naive_sequence(g, m, n))
    assert rep.opt == sum(b.opt for b in rep.blocks)
    for b in rep.blocks:
        if b.gap is not None:
            # F = {} is always feasible, so the block optimum never exceeds gap / 2
            assert 2 * b.opt <= b.gap


@settings(max_examples=100, deadline=None)
@given(instances)
def test_disjoint_case_formula(inst):
    emb = _emb(inst)
    if len(enumerate_faces(emb)) < 2 or any(c in inst.m and c in inst.n for c in emb.chord_ids):
        return
    g0 = gap(build_dual(emb, inst.m, inst.n))
    seq = disjoint_case_sequence(emb, inst.m, inst.n)
    assert 2 * len(seq) == g0
    assert seq.validate(inst.graph, inst.m, inst.n)
    pots = [residual_gap(emb, x, inst.n) for x in seq.matchings]
    assert all(a - b == 2 for a, b in zip(pots, pots[1:]))


@pytest.mark.parametrize("seed", range(30))
def test_relabelled_instances(seed):
    inst = random_outerplanar_instance(4 + 2 * (seed % 6), [0.3, 0.7, 1.0][seed % 3], seed, parallel=0.2)
    rng = random.Random(seed)
    k = inst.graph.vertex_count
    perm = list(range(k))
    rng.shuffle(perm)
    order = list(range(inst.graph.edge_count))
    rng.shuffle(order)
    back = {e: i for i, e in enumerate(order)}
    g = Multigraph(k, tuple((perm[inst.graph.edges[e][0]], perm[inst.graph.edges[e][1]]) for e in order))
    relab = SpmrInstance(g, [back[e] for e in inst.m], [back[e] for e in inst.n])
    assert solve(relab).opt == bfs_shortest(g, relab.m, relab.n)[0]
