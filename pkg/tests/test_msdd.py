import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmreconf.errors import SizeError, StructureError
from pmreconf.graph import Multigraph
from pmreconf.msdd import (
    MsddInstance,
    component_diameter,
    decomposition_objective,
    dp_tables,
    random_tree_instance,
    solve_msdd,
    solve_msdd_bruteforce,
    value_domain,
)


def path_tree(lengths, deletable=()):
    k = len(lengths) + 1
    return MsddInstance(Multigraph(k, tuple((i, i + 1) for i in range(k - 1))), deletable, lengths)


def test_component_diameter_examples():
    t = path_tree([1, 0, 1])
    assert component_diameter(t.tree, t.lengths, {2}) == 0
    assert component_diameter(t.tree, t.lengths, range(4)) == 2
    star = Multigraph(4, ((0, 1), (0, 2), (0, 3)))
    assert component_diameter(star, (3, 2, 2), range(4)) == 5


def test_no_deletable_edges_gives_diameter():
    inst = path_tree([2, 1, 3])
    sol = solve_msdd(inst)
    assert sol.deleted == frozenset() and sol.objective == 6
    assert solve_msdd_bruteforce(inst).objective == 6


def test_full_decomposition():
    sol = solve_msdd(path_tree([1, 1], deletable={0, 1}))
    assert sol.objective == 0 and sol.deleted == {0, 1}


def test_keep_versus_delete_middle_edge():
    # 3 + 5 + 3 when kept, 3 + 3 when the middle edge goes
    inst = path_tree([3, 5, 3], deletable={1})
    assert solve_msdd_bruteforce(inst).objective == 6
    sol = solve_msdd(inst)
    assert sol.objective == 6 and sol.deleted == {1}


def test_two_node_tree():
    sol = solve_msdd(path_tree([5], deletable={0}))
    assert sol.objective == 0 and sol.deleted == {0}


def test_single_vertex():
    inst = MsddInstance(Multigraph(1, ()), (), ())
    assert solve_msdd(inst).objective == 0


def test_value_domain_examples():
    assert value_domain(path_tree([1, 1])) == [0, 1, 2]
    assert value_domain(path_tree([0, 0, 0])) == [0]


def test_initial_tables_and_feasibility():
    inst = random_tree_instance(8, 2, 0.5, seed=3)
    dom = set(value_domain(inst))
    for (v, j), table in dp_tables(inst).items():
        if j == 0:
            assert table == {(0, 0): 0}
        for x, y in table:
            assert x <= y <= inst.total_length
            assert x in dom and y in dom


def test_invalid_trees():
    with pytest.raises(StructureError):
        MsddInstance(Multigraph(3, ((0, 1), (1, 2), (2, 0))), (), (1, 1, 1))
    with pytest.raises(StructureError):
        MsddInstance(Multigraph(3, ((0, 1),)), (), (1,))
    with pytest.raises(StructureError):
        path_tree([1, -1])
    with pytest.raises(StructureError):
        path_tree([1], deletable={4})


def test_bruteforce_guard():
    inst = path_tree([1] * 25, deletable=range(25))
    with pytest.raises(SizeError):
        solve_msdd_bruteforce(inst)


@settings(max_examples=300, deadline=None)
@given(
    n=st.integers(1, 10),
    max_length=st.integers(0, 4),
    p=st.floats(0, 1),
    seed=st.integers(0, 10**6),
)
def test_dp_matches_bruteforce(n, max_length, p, seed):
    inst = random_tree_instance(n, max_length, p, seed)
    brute = solve_msdd_bruteforce(inst)
    full = solve_msdd(inst)
    assert full.objective == brute.objective
    assert solve_msdd(inst, domain="restricted").objective == brute.objective
    assert full.deleted <= inst.deletable
    assert decomposition_objective(inst, full.deleted) == full.objective
    # local optimality: undoing any single deletion never beats the optimum
    for e in full.deleted:
        assert decomposition_objective(inst, full.deleted - {e}) >= full.objective


def test_value_only_skips_reconstruction():
    inst = random_tree_instance(10, 2, 0.6, seed=11)
    sol = solve_msdd(inst, reconstruct=False)
    assert sol.deleted == frozenset()
    assert sol.objective == solve_msdd(inst).objective


def test_work_within_bound():
    for seed in range(20):
        inst = random_tree_instance(30, 3, 0.5, seed)
        sol = solve_msdd(inst)
        bound = inst.tree.vertex_count * (inst.total_length + 1) ** 4
        assert sol.work <= bound
