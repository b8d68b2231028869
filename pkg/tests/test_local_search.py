import random

import pytest
from hypothesis import given, settings

from conftest import small_graphs
from duomap import (
    DuoGraph,
    audit_local_optimum,
    fast_local_improvements,
    gen_mcsp_instance,
    gen_random_graph,
    gen_staircase_graph,
    greedy,
    is_valid,
    local_improvements_reference,
)
from duomap.instances import as_graph
from duomap.local_search import PARTNER_SCAN_CAP, FastLocalSearch, try_adding_pair_with
from oracles import improving_move_exists, naive_opt, overlapping

# largest enqueues / (nA + nB)^2 seen on random, staircase and residual inputs was 0.5
ENQUEUE_CONSTANT = 1


@pytest.mark.parametrize("solver", [fast_local_improvements, local_improvements_reference])
def test_sample(sample, solver):
    out = solver(sample)
    assert len(out) == 3
    assert is_valid(out, sample)


@pytest.mark.parametrize("solver", [fast_local_improvements, local_improvements_reference])
def test_trivial(solver):
    assert len(solver(DuoGraph(3, 3))) == 0
    assert solver(DuoGraph(3, 3, [(2, 1)])) == {(2, 1)}


@pytest.mark.parametrize("solver", [fast_local_improvements, local_improvements_reference])
def test_trigger_swaps_to_two(trigger, solver):
    assert solver(trigger) == {(1, 3), (3, 1)}


def test_pair_with_trigger(trigger):
    state = FastLocalSearch(trigger, start=[(2, 2)])
    assert try_adding_pair_with((1, 3), state) is True
    assert state.solution == {(1, 3), (3, 1)}
    assert state.swaps == 1
    assert all(e in state.queue for e in [(1, 3), (3, 1), (2, 2)])


def test_pair_with_no_partner():
    g = DuoGraph(3, 3, [(1, 1), (2, 3)])
    state = FastLocalSearch(g, start=[(2, 3)])
    assert try_adding_pair_with((1, 1), state) is False
    assert state.solution == {(2, 3)}


def test_pair_with_streak_neighbour():
    g = DuoGraph(3, 3, [(1, 1), (2, 2), (3, 1)])
    state = FastLocalSearch(g, start=[(3, 1)])
    assert try_adding_pair_with((1, 1), state) is True
    assert state.solution == {(1, 1), (2, 2)}
    assert state.max_partner_scan == 0
    assert naive_opt(g.edges) == {(1, 1), (2, 2)}


def test_single_blocker_regression():
    # counting every overlapping solution edge would leave this at size 2
    g = DuoGraph(6, 6, [(1, 3), (3, 1), (4, 2), (6, 4)])
    out = fast_local_improvements(g)
    assert out == {(3, 1), (4, 2), (6, 4)}
    assert out == naive_opt(g.edges)


@settings(max_examples=300)
@given(small_graphs(max_n=7, max_edges=12))
def test_terminal_state_has_no_small_improvement(g):
    for solver in (fast_local_improvements, local_improvements_reference):
        out = solver(g)
        assert is_valid(out, g)
        assert not improving_move_exists(g.edges, out, 1)
        # one-for-two swaps are exhausted too
        assert audit_local_optimum(g, out, 2)


@settings(max_examples=200)
@given(small_graphs(max_n=9, max_edges=20))
def test_fast_search_counters(g):
    stats = {}
    out = fast_local_improvements(g, stats)
    assert stats["max_partner_scan"] <= PARTNER_SCAN_CAP
    assert stats["growths"] == len(out)
    assert stats["growths"] <= g.n_a
    assert stats["enqueues"] <= ENQUEUE_CONSTANT * (g.n_a + g.n_b) ** 2


@pytest.mark.parametrize("n", [50, 200, 600])
def test_enqueue_bound_larger_inputs(n):
    for seed in range(2):
        for g in (gen_staircase_graph(n, seed), gen_random_graph(n, n, 4 / n, seed)):
            stats = {}
            fast_local_improvements(g, stats)
            assert stats["enqueues"] <= ENQUEUE_CONSTANT * (g.n_a + g.n_b) ** 2
            assert stats["max_partner_scan"] <= PARTNER_SCAN_CAP


def _residual_instances(count):
    out = []
    seed = 0
    while len(out) < count:
        rng = random.Random(seed)
        if seed % 2:
            n = rng.randint(3, 12)
            g = as_graph(gen_mcsp_instance(n, rng.randint(1, min(4, n)), rng.randint(1, 3), seed))
        else:
            g = gen_random_graph(rng.randint(2, 7), rng.randint(2, 7), 0.3, seed)
        seed += 1
        _, residual, _ = greedy(g, 3)
        if len(residual) <= 16:
            out.append(residual)
    return out


RESIDUALS = _residual_instances(120)


@pytest.mark.parametrize("solver", [fast_local_improvements, local_improvements_reference])
def test_overlap_accounting_on_residuals(solver):
    for r in RESIDUALS:
        alg = solver(r)
        opt = naive_opt(r.edges)
        c = sum(1 for a in alg for o in opt if overlapping(a, o))
        k1 = sum(1 for o in opt if sum(overlapping(a, o) for a in alg) == 1)
        assert 4 * len(alg) >= c >= 2 * len(opt) - k1
        assert k1 <= len(alg)
        assert 5 * len(alg) >= 2 * len(opt)
