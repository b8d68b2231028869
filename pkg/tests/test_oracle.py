import pytest
from hypothesis import given, settings

from conftest import small_graphs
from duomap import DuoGraph, InstanceTooLarge, audit_local_optimum, exact_opt, is_valid
from oracles import improving_move_exists, naive_opt


def test_sample(sample):
    assert exact_opt(sample) == {(1, 5), (2, 6), (4, 1)}


def test_incompatible_pair_keeps_smallest():
    assert exact_opt(DuoGraph(6, 6, [(4, 1), (5, 3)])) == {(4, 1)}


def test_empty():
    assert len(exact_opt(DuoGraph(0, 0))) == 0


def test_counterexample_optimum():
    g = DuoGraph(6, 6, [(1, 3), (3, 1), (4, 2), (6, 4)])
    assert exact_opt(g) == {(3, 1), (4, 2), (6, 4)}


def test_cap():
    g = DuoGraph(25, 1, [(i, 1) for i in range(1, 26)])
    with pytest.raises(InstanceTooLarge):
        exact_opt(g)
    with pytest.raises(InstanceTooLarge):
        audit_local_optimum(g, (), 1)
    assert len(exact_opt(g, cap=25)) == 1
    assert len(exact_opt(DuoGraph(5, 5, [(1, 1), (2, 2)]), cap=2)) == 2


@settings(max_examples=300)
@given(small_graphs(max_n=7, max_edges=12))
def test_matches_naive(g):
    out = exact_opt(g)
    assert is_valid(out, g)
    assert out == naive_opt(g.edges)


@settings(max_examples=100)
@given(small_graphs(max_n=6, max_edges=10))
def test_shift_invariance(g):
    shifted = DuoGraph(g.n_a + 2, g.n_b + 3, [(i + 2, j + 3) for i, j in g.edges])
    assert len(exact_opt(shifted)) == len(exact_opt(g))


def test_audit_examples(sample, trigger):
    assert audit_local_optimum(trigger, {(2, 2)}, 1)
    assert not audit_local_optimum(trigger, {(2, 2)}, 2)
    assert audit_local_optimum(sample, {(1, 5), (2, 6), (4, 1)}, 5)
    assert not audit_local_optimum(sample, {(4, 1)}, 1)


@settings(max_examples=200)
@given(small_graphs(max_n=6, max_edges=9))
def test_audit_matches_enumeration(g):
    alg = []
    for e in reversed(g.edge_list):
        if is_valid([*alg, e], g):
            alg.append(e)
    for t in (1, 2, 3):
        assert audit_local_optimum(g, alg, t) == (not improving_move_exists(g.edges, alg, t))


@settings(max_examples=100)
@given(small_graphs(max_n=6, max_edges=10))
def test_optimum_passes_every_audit(g):
    opt = exact_opt(g)
    assert all(audit_local_optimum(g, opt, t) for t in (1, 2, 4))
