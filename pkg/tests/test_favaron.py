import random

import pytest

from koptlab import (
    CapExceeded,
    ContractViolation,
    CounterexampleFound,
    Graph,
    KEdgeChromaticSubgraph,
    Orientation,
    alpha_k,
    complete_graph,
    cycle_graph,
    empty_graph,
    gamma_k,
    improve_once,
    is_k_dependent,
    is_k_dominating,
    k_optimal_exhaustive,
    k_optimal_local,
    k_optimal_sets,
    matchings_into_d,
    path_graph,
    phi_k,
    phi_k_max,
    prune_to_dependent,
    saturating_matching_complement,
    star_graph,
    verify_theorem_main,
)
from koptlab.favaron import outside_subgraph
from koptlab.graphs import orient_all
from koptlab.harness import all_labeled_graphs
from conftest import random_simple_graph


def test_phi_values():
    assert phi_k(complete_graph(3), 2, set()) == 0
    assert phi_k(complete_graph(3), 2, {0, 1, 2}) == 3
    assert phi_k(path_graph(3), 2, {0, 2}) == 4


def test_dependence():
    assert is_k_dependent(path_graph(3), 2, set())
    assert not is_k_dependent(path_graph(3), 2, {0, 1, 2})
    assert is_k_dependent(cycle_graph(5), 2, {0, 1, 3})


def test_domination():
    g = complete_graph(3)
    assert is_k_dominating(g, 2, {0, 1, 2})
    assert not is_k_dominating(g, 2, {0})
    assert is_k_dominating(cycle_graph(4), 2, {0, 2})


def test_prune_traces():
    p3 = path_graph(3)
    assert prune_to_dependent(p3, 2, {0, 2}) == {0, 2}
    assert prune_to_dependent(p3, 1, {0, 1, 2}) == {0, 2}
    pruned = prune_to_dependent(complete_graph(3), 2, {0, 1, 2})
    assert len(pruned) == 2 and phi_k(complete_graph(3), 2, pruned) == 3


def test_prune_properties(rng):
    for _ in range(100):
        g = random_simple_graph(rng, n_max=8)
        k = rng.randint(1, 3)
        t = frozenset(v for v in range(g.n) if rng.random() < 0.6)
        d = prune_to_dependent(g, k, t)
        assert d <= t
        assert is_k_dependent(g, k, d)
        assert phi_k(g, k, d) >= phi_k(g, k, t)


def test_exhaustive_examples():
    res = k_optimal_exhaustive(path_graph(3), 1)
    assert res.d == {0, 2} and res.phi == 2 and res.certificate == "exhaustive"
    res = k_optimal_exhaustive(cycle_graph(5), 2)
    assert res.phi == 5
    assert len(res.d) == 3
    res = k_optimal_exhaustive(empty_graph(4), 3)
    assert res.d == {0, 1, 2, 3} and res.phi == 12


def test_exhaustive_ties_lexicographic():
    # C5, k=2: maximizers are the 3-sets inducing one edge; the least is {0,1,3}
    res = k_optimal_exhaustive(cycle_graph(5), 2)
    assert res.d == {0, 1, 3}


def test_exhaustive_cap():
    with pytest.raises(CapExceeded):
        k_optimal_exhaustive(empty_graph(25), 1)


def test_phi_max_over_all_sets_equals_dependent_max(rng):
    # the maximum over arbitrary sets cannot beat the k-dependent maximum
    for _ in range(60):
        g = random_simple_graph(rng, n_max=10)
        k = rng.randint(1, 3)
        best_all = max(
            phi_k(g, k, {v for v in range(g.n) if (mask >> v) & 1})
            for mask in range(1 << g.n)
        )
        assert best_all == phi_k_max(g, k)


def test_improve_once_improvement_trace():
    p3 = path_graph(3)
    sub, _ = outside_subgraph(p3, {1})
    out = improve_once(p3, 1, frozenset({1}), Orientation(sub, []))
    assert out == {0, 2}


def test_improve_once_no_violation_trace():
    k3 = complete_graph(3)
    sub, order = outside_subgraph(k3, {0})
    assert order == [1, 2]
    out = improve_once(k3, 1, frozenset({0}), Orientation(sub, [(0, 1)]))
    assert isinstance(out, KEdgeChromaticSubgraph)
    # vertex 2 has outdegree 0, so it must be covered by the cross edge
    assert out.degree(2) == 1


def test_improve_once_full_d_trivial():
    g = complete_graph(3)
    sub, _ = outside_subgraph(g, set())
    # d = V(g) is not 1-dependent for K3; use an edgeless graph instead
    e3 = empty_graph(3)
    sub, _ = outside_subgraph(e3, {0, 1, 2})
    out = improve_once(e3, 1, frozenset({0, 1, 2}), Orientation(sub, []))
    assert isinstance(out, KEdgeChromaticSubgraph) and out.size == 0


def test_improve_once_contract_checks():
    p3 = path_graph(3)
    sub, _ = outside_subgraph(p3, {1})
    with pytest.raises(ContractViolation):
        improve_once(p3, 1, frozenset({0, 1}), Orientation(sub, []))  # d not 1-dependent
    wrong_sub = complete_graph(2)
    with pytest.raises(ContractViolation):
        improve_once(p3, 1, frozenset({1}), Orientation(wrong_sub, [(0, 1)]))


def test_improved_results_strictly_increase_phi(rng):
    improved = 0
    for _ in range(150):
        g = random_simple_graph(rng, n_max=7)
        k = rng.randint(1, 2)
        d = prune_to_dependent(g, k, frozenset(v for v in range(g.n) if rng.random() < 0.4))
        sub, _ = outside_subgraph(g, d)
        if sub.m > 8:
            continue
        for j in orient_all(sub):
            out = improve_once(g, k, d, j)
            if isinstance(out, frozenset):
                improved += 1
                assert phi_k(g, k, out) > phi_k(g, k, d)
                assert is_k_dependent(g, k, out)
            break  # one orientation per instance is enough here
    assert improved > 20


def test_local_examples():
    assert k_optimal_local(path_graph(3), 1).phi == 2
    assert k_optimal_local(complete_graph(6), 1).phi == 1
    assert k_optimal_local(cycle_graph(4), 2).phi == 4


def test_local_certificate_and_domination(rng):
    for _ in range(60):
        g = random_simple_graph(rng, n_max=7)
        k = rng.randint(1, 3)
        res = k_optimal_local(g, k)
        assert res.certificate == "local-maximum"
        assert is_k_dependent(g, k, res.d)
        assert is_k_dominating(g, k, res.d)
        assert res.phi <= k_optimal_exhaustive(g, k).phi


def test_local_uses_degeneracy_fallback():
    # K7 outside subgraph has 21 > 12 edges at the start, forcing the fallback
    res = k_optimal_local(complete_graph(7), 1)
    assert res.phi == 1
    assert is_k_dominating(complete_graph(7), 1, res.d)


def test_verify_theorem_main_trivial_and_k3():
    e2 = empty_graph(2)
    sub, _ = outside_subgraph(e2, {0, 1})
    m = verify_theorem_main(e2, 1, frozenset({0, 1}), Orientation(sub, []))
    assert m.size == 0
    k3 = complete_graph(3)
    sub, order = outside_subgraph(k3, {0})
    m = verify_theorem_main(k3, 1, frozenset({0}), Orientation(sub, [(0, 1)]))
    assert m.degree(order[1]) >= 1


def test_verify_theorem_main_c4():
    c4 = cycle_graph(4)
    sub, _ = outside_subgraph(c4, {1, 3})
    m = verify_theorem_main(c4, 2, frozenset({1, 3}), Orientation(sub, []))
    assert m.size == 4
    assert m.edges == c4.edges


def test_verify_theorem_main_counterexample_channel():
    # a non-optimal set with an impossible demand: P3 with d = {middle}
    p3 = path_graph(3)
    sub, _ = outside_subgraph(p3, {1})
    with pytest.raises(CounterexampleFound) as exc:
        verify_theorem_main(p3, 1, frozenset({1}), Orientation(sub, []))
    payload = exc.value.payload
    assert payload["graph6"] and payload["violator"]


def test_theorem_main_exhaustive_small():
    for g in all_labeled_graphs(4):
        for k in (1, 2):
            sets, _ = k_optimal_sets(g, k)
            for d in sets:
                sub, order = outside_subgraph(g, d)
                pos = {v: i for i, v in enumerate(order)}
                for j in orient_all(sub):
                    m = verify_theorem_main(g, k, d, j)
                    for e in m.edges:
                        assert (e[0] in d) != (e[1] in d)
                    for v in order:
                        assert m.degree(v) + j.outdegree(pos[v]) >= k


def test_matchings_into_d_c4():
    ms = matchings_into_d(cycle_graph(4), 2, {1, 3}, {0})
    assert len(ms) == 2
    assert {e for cls in ms for e in cls} <= {(0, 1), (0, 3)}
    for cls in ms:
        assert any(0 in e for e in cls)


def test_matchings_into_d_empty_s():
    ms = matchings_into_d(cycle_graph(4), 2, {1, 3}, set())
    assert ms == [frozenset(), frozenset()]


def test_matchings_into_d_k1_reduces_to_matching():
    # a maximum independent set and a disjoint independent set: Hall route
    c6 = cycle_graph(6)
    ms = matchings_into_d(c6, 1, {0, 2, 4}, {1, 5})
    assert len(ms) == 1
    covered = {v for e in ms[0] for v in e}
    assert {1, 5} <= covered


def test_matchings_into_d_contracts():
    with pytest.raises(ContractViolation):
        matchings_into_d(cycle_graph(4), 2, {1, 3}, {1})  # overlaps d
    with pytest.raises(ContractViolation):
        matchings_into_d(path_graph(4), 1, {0}, {1, 2})  # s not independent


def test_saturating_matching_complement_traces():
    assert saturating_matching_complement(Graph(2, [(0, 1)]), {0}) == {(0, 1)}
    m = saturating_matching_complement(cycle_graph(5), {0, 2})
    covered = {v for e in m for v in e}
    assert {1, 3, 4} <= covered
    m = saturating_matching_complement(star_graph(3), {1, 2, 3})
    assert m == {(0, 1)}


def test_saturating_matching_complement_random(rng):
    for _ in range(60):
        g = random_simple_graph(rng, n_max=8)
        k = 1
        best = k_optimal_exhaustive(g, 1).d  # maximum independent set
        m = saturating_matching_complement(g, best)
        touched = set()
        for u, v in m:
            assert u not in touched and v not in touched
            touched.update((u, v))
        assert touched >= set(range(g.n)) - best


def test_gamma_alpha_values():
    assert gamma_k(complete_graph(5), 1) == 1
    assert alpha_k(complete_graph(5), 1) == 1
    assert gamma_k(cycle_graph(4), 2) == 2
    assert alpha_k(cycle_graph(4), 2) == 2
    assert gamma_k(cycle_graph(5), 1) == 2
    assert alpha_k(cycle_graph(5), 1) == 2


def test_gamma_le_alpha(rng):
    for _ in range(50):
        g = random_simple_graph(rng, n_max=7)
        k = rng.randint(1, 3)
        assert gamma_k(g, k) <= alpha_k(g, k)
