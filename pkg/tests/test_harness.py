import json
import random

import networkx as nx
import pytest

from koptlab import (
    CapExceeded,
    Graph,
    KEdgeChromaticSubgraph,
    chordal_order,
    cycle_graph,
    encode_graph6,
    path_graph,
)
from koptlab.harness import (
    GraphSource,
    PROPERTIES,
    all_labeled_graphs,
    degree_k_subgraph_bruteforce,
    random_chordal,
    run_instance,
    run_property,
)


def test_random_chordal_certified(rng):
    for trial in range(60):
        n = rng.randint(1, 12)
        g = random_chordal(n, trial)
        assert chordal_order(g) is not None
        if g.n >= 2:
            h = nx.Graph()
            h.add_nodes_from(range(g.n))
            h.add_edges_from(g.edges)
            assert nx.is_chordal(h)


def test_random_chordal_deterministic():
    assert random_chordal(10, 7).edges == random_chordal(10, 7).edges


def test_degree_k_subgraph_bruteforce_known():
    c4 = cycle_graph(4)
    m = degree_k_subgraph_bruteforce(c4, 2, {1, 3})
    assert isinstance(m, KEdgeChromaticSubgraph)
    assert all(m.degree(v) == 2 for v in (0, 2))
    # P3 with d = the middle vertex: no matching covers both endpoints
    assert degree_k_subgraph_bruteforce(path_graph(3), 1, {1}) is None
    # but the optimum d = {0, 2} works
    m = degree_k_subgraph_bruteforce(path_graph(3), 1, {0, 2})
    assert m is not None and m.degree(1) == 1


def test_all_labeled_graphs_count():
    assert sum(1 for _ in all_labeled_graphs(3)) == 8
    assert sum(1 for _ in all_labeled_graphs(4)) == 64


def test_source_kinds(tmp_path):
    g6 = tmp_path / "graphs.g6"
    g6.write_text("C~\nD?{\n")
    got = list(GraphSource.graph6_file(str(g6)).graphs())
    assert [g.n for g in got] == [4, 5]

    el = tmp_path / "char.el"
    el.write_text("3 2\n0 1\n1 2\n")
    got = list(GraphSource.edge_list_file(str(el)).graphs())
    assert got == [path_graph(3)]

    assert sum(1 for _ in GraphSource.exhaustive(3).graphs()) == 8
    rnd = list(GraphSource.random(6, 0.5, 17, 5).graphs())
    assert len(rnd) == 5
    rnd2 = list(GraphSource.random(6, 0.5, 17, 5).graphs())
    assert [g.edges for g in rnd] == [g.edges for g in rnd2]
    assert all(chordal_order(g) for g in GraphSource.random_chordal(7, 3, 4).graphs())


def test_source_caps_and_seeds():
    with pytest.raises(CapExceeded):
        GraphSource.exhaustive(9)
    with pytest.raises(ValueError):
        GraphSource.random(5, 0.5, None, 3)


def test_exhaustive_dedup_degrees():
    full = sum(1 for _ in GraphSource.exhaustive(4).graphs())
    deduped = sum(1 for _ in GraphSource.exhaustive(4, dedup_degrees=True).graphs())
    assert deduped < full


def test_run_property_deterministic():
    src = GraphSource.exhaustive(3)
    strip = lambda reports: [
        {k: v for k, v in r.to_json().items() if k != "ms"} for r in reports
    ]
    first = strip(run_property("favaron", src, [1, 2]))
    second = strip(run_property("favaron", src, [1, 2]))
    assert first == second
    assert all(r["outcome"] == "holds" for r in first)
    assert len(first) == 16


def test_run_property_parallel_same_multiset():
    src = GraphSource.exhaustive(3)
    serial = sorted(
        json.dumps(r.to_json(), sort_keys=True)
        for r in run_property("lebensold", src, [1, 2])
    )
    parallel = sorted(
        json.dumps(r.to_json(), sort_keys=True)
        for r in run_property("lebensold", src, [1, 2], jobs=2)
    )
    # timing jitters; compare without the ms field
    strip = lambda items: [
        {k: v for k, v in json.loads(s).items() if k != "ms"} for s in items
    ]
    assert strip(serial) == strip(parallel)


def test_report_schema():
    rep = run_instance("favaron", "C~", 2)
    data = rep.to_json()
    assert set(data) == {"property", "graph6", "k", "outcome", "witness", "ms"}
    assert data["outcome"] in {"holds", "violated", "skipped"}
    assert isinstance(data["ms"], float)


def test_k_free_properties_run_once_per_graph():
    src = GraphSource.exhaustive(3)
    reports = list(run_property("conj-decomp", src, [1, 2, 3]))
    assert len(reports) == 8
    assert all(r.k == 0 for r in reports)


def test_unknown_property():
    with pytest.raises(ValueError):
        list(run_property("no-such-thing", GraphSource.exhaustive(3), [1]))


def test_all_properties_hold_on_tiny_sweep():
    src = GraphSource.exhaustive(3)
    for prop in PROPERTIES:
        reports = list(run_property(prop, src, [1, 2]))
        bad = [r for r in reports if r.outcome == "violated"]
        assert not bad, f"{prop}: {bad[:1]}"


def test_skip_reasons_are_reported():
    big = Graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8)])
    rep = run_instance("main", encode_graph6(big), 1)
    assert rep.outcome == "skipped"
    assert "ceiling" in rep.witness["reason"]


def test_violation_reports_replay(monkeypatch):
    # a fabricated always-violating property exercises the reporting path
    def bogus(g, k, rng):
        return "violated", {"graph6": encode_graph6(g), "note": "fabricated"}

    monkeypatch.setitem(PROPERTIES, "bogus", bogus)
    reports = list(run_property("bogus", GraphSource.exhaustive(2), [1]))
    assert all(r.outcome == "violated" for r in reports)
    payload = reports[0].witness
    assert payload["graph6"] == reports[0].graph6
