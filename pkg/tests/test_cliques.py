import itertools

import pytest

from ndcomm import heqfun
from ndcomm.boundslab import cliques
from ndcomm.errors import BudgetExceededError
from ndcomm.heqfun import HeqInput, HeqParams

P21 = HeqParams(2, 1)
P22 = HeqParams(2, 2)


def hin(params, *entries):
    return HeqInput(params, tuple(entries))


def test_condition_matches_graph_adjacency_exhaustively():
    # the pairwise condition and graph adjacency must agree on every pair
    graph = cliques.build_condition_graph(P21)
    for i, a in enumerate(graph.vertices):
        for j, b in enumerate(graph.vertices):
            if i == j:
                continue
            adjacent = bool((graph.adjacency[i] >> j) & 1)
            pattern = heqfun.delta_pattern(a, b)
            from ndcomm import hadamard

            assert adjacent == (not hadamard.is_codeword(pattern))
            assert adjacent == cliques.condition_set_ok([a, b])


def test_singletons_always_valid():
    for a in heqfun.all_inputs(P22):
        assert cliques.condition_set_ok([a])


def test_duplicates_rejected():
    a = hin(P21, 1, 0, 0)
    assert not cliques.condition_set_ok([a, a])


def test_exact_maximum_k2_kprime1():
    res = cliques.max_condition_set(P21, "exact")
    assert res.size == 2
    assert res.exact
    assert cliques.condition_set_ok(list(res.witness))
    # no 3-element set works: check every triple directly
    inputs = list(heqfun.all_inputs(P21))
    for triple in itertools.combinations(inputs, 3):
        assert not cliques.condition_set_ok(list(triple))


def test_exact_maximum_k2_kprime2_matches_exhaustive():
    res = cliques.max_condition_set(P22, "exact")
    exhaustive = cliques.max_condition_set_exhaustive(P22)
    assert res.size == exhaustive == 6
    assert cliques.condition_set_ok(list(res.witness))


def test_exhaustive_matches_exact_k2_kprime1():
    assert cliques.max_condition_set_exhaustive(P21) == 2


def test_heuristic_is_seeded_and_verified():
    r1 = cliques.max_condition_set(P22, "heuristic", seed=11, restarts=8, steps=128)
    r2 = cliques.max_condition_set(P22, "heuristic", seed=11, restarts=8, steps=128)
    assert r1.witness == r2.witness
    assert not r1.exact
    assert 1 <= r1.size <= 6
    assert cliques.condition_set_ok(list(r1.witness))


def test_heuristic_requires_seed():
    with pytest.raises(ValueError):
        cliques.max_condition_set(P22, "heuristic")


def test_heuristic_scales_past_the_exact_budget():
    # (3, 2) has 4^7 = 16384 vertices: exact mode must refuse, the heuristic
    # must still return a verified witness without building the graph
    p32 = HeqParams(3, 2)
    with pytest.raises(BudgetExceededError):
        cliques.max_condition_set(p32, "exact")
    res = cliques.max_condition_set(p32, "heuristic", seed=3, restarts=2, steps=64)
    assert res.size >= 1
    assert cliques.condition_set_ok(list(res.witness))


def test_unknown_mode():
    with pytest.raises(ValueError):
        cliques.max_condition_set(P21, "quantum")


def test_heuristic_witness_consistent_with_counting_ceiling():
    # consistency with the closed-form ceiling where it applies (not a proof)
    from ndcomm.boundslab.counting import condition_set_bound

    res = cliques.max_condition_set(HeqParams(3, 3), "heuristic", seed=1, restarts=4, steps=256)
    assert cliques.condition_set_ok(list(res.witness))
    assert res.size <= condition_set_bound(3, 3)


def test_exact_solver_against_naive_search_on_random_graphs():
    # oracle: check every vertex subset of small seeded random graphs
    import random

    rng = random.Random(123)
    for trial in range(12):
        n = rng.randrange(6, 13)
        p = rng.choice((0.2, 0.5, 0.8))
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        best_naive = 0
        for subset in range(1, 1 << n):
            members = [v for v in range(n) if (subset >> v) & 1]
            if all((adj[a] >> b) & 1 for i, a in enumerate(members) for b in members[i + 1 :]):
                best_naive = max(best_naive, len(members))
        mask = cliques._max_clique_bitset(adj, n)
        assert mask.bit_count() == best_naive, (trial, n, p)


def test_enumerate_condition_sets_k2_kprime1():
    sets = list(cliques.enumerate_condition_sets(P21))
    assert len(sets) == 24  # 8 singletons + 16 valid pairs
    assert sum(1 for s in sets if len(s) == 1) == 8
    assert sum(1 for s in sets if len(s) == 2) == 16
    for s in sets:
        assert cliques.condition_set_ok(list(s))
    with pytest.raises(BudgetExceededError):
        list(cliques.enumerate_condition_sets(P21, max_sets=10))
