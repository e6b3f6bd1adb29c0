import random

import networkx as nx
import pytest

from koptlab import (
    BipartiteSplit,
    CapExceeded,
    Graph,
    Graph6Error,
    Orientation,
    complete_graph,
    cycle_graph,
    empty_graph,
    encode_graph6,
    format_edge_list,
    induced_subgraph,
    join_independent,
    orient_all,
    parse_edge_list,
    parse_graph6,
    path_graph,
    triangles,
)
from conftest import random_simple_graph


# --- graph6 ---------------------------------------------------------------

def test_parse_known_star():
    g = parse_graph6("D?{")
    assert g.n == 5
    assert g.edges == {(0, 4), (1, 4), (2, 4), (3, 4)}
    assert encode_graph6(g) == "D?{"


def test_parse_single_vertex():
    g = parse_graph6("@")
    assert g.n == 1 and g.m == 0


def test_encode_then_parse_c5():
    c5 = cycle_graph(5)
    assert parse_graph6(encode_graph6(c5)) == c5


def test_k4_is_c_tilde():
    assert encode_graph6(complete_graph(4)) == "C~"


def test_roundtrip_against_networkx():
    rng = random.Random(1)
    for _ in range(100):
        g = random_simple_graph(rng, n_max=12)
        mine = encode_graph6(g)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert mine == theirs
        back = parse_graph6(theirs)
        assert back == g


def test_parse_header_prefix_accepted():
    assert parse_graph6(">>graph6<<D?{").n == 5


@pytest.mark.parametrize(
    "bad, offset",
    [
        ("D?", 2),     # truncated bit vector; offset points at end of input
        ("D?{{", 3),   # trailing bytes
        ("~???", 0),   # long form
    ],
)
def test_parse_errors_carry_offsets(bad, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(bad)
    assert exc.value.offset == offset


def test_encode_refuses_large():
    with pytest.raises(ValueError):
        encode_graph6(empty_graph(63))


# --- edge lists -----------------------------------------------------------

def test_edge_list_roundtrip():
    g = cycle_graph(5)
    assert parse_edge_list(format_edge_list(g)) == g


def test_edge_list_bad_count():
    with pytest.raises(ValueError):
        parse_edge_list("3 2\n0 1\n")


# --- constructions --------------------------------------------------------

def test_join_one_apex_over_edge_is_triangle():
    assert join_independent(1, Graph(2, [(0, 1)])) == complete_graph(3)


def test_join_two_apexes_over_edge_is_k4_minus_edge():
    g = join_independent(2, Graph(2, [(0, 1)]))
    assert g.n == 4
    assert g.edges == complete_graph(4).edges - {(0, 1)}


def test_join_edge_count_formula():
    rng = random.Random(5)
    for _ in range(30):
        h = random_simple_graph(rng, n_max=7)
        k = rng.randint(1, 3)
        j = join_independent(k, h)
        assert j.m == h.m + k * h.n


def test_join_triangles_of_triangle_free_h():
    h = cycle_graph(5)
    j = join_independent(2, h)
    expected = {
        (a, u + 2, v + 2) for a in range(2) for u, v in h.edges
    }
    assert set(triangles(j)) == expected


def test_induced_subgraph_cases():
    sub, order = induced_subgraph(complete_graph(4), [1, 3])
    assert sub == complete_graph(2) and order == [1, 3]
    sub, order = induced_subgraph(cycle_graph(5), [1, 2, 3])
    assert sub == path_graph(3)
    sub, order = induced_subgraph(cycle_graph(5), [])
    assert sub.n == 0 and order == []


def test_induced_subgraph_degree_sum():
    rng = random.Random(7)
    for _ in range(40):
        g = random_simple_graph(rng)
        picks = [v for v in range(g.n) if rng.random() < 0.5]
        sub, _ = induced_subgraph(g, picks)
        assert sum(sub.degree(v) for v in range(sub.n)) == 2 * sub.m


def test_orient_all_counts_and_determinism():
    p3 = path_graph(3)
    all_orients = list(orient_all(p3))
    assert len(all_orients) == 4
    assert len({o.arcs for o in all_orients}) == 4
    assert list(o.arcs for o in orient_all(p3)) == [o.arcs for o in all_orients]
    assert sum(1 for _ in orient_all(Graph(1))) == 1
    assert sum(1 for _ in orient_all(Graph(2, [(0, 1)]))) == 2


def test_orient_all_cap():
    with pytest.raises(CapExceeded):
        next(orient_all(complete_graph(7)))  # 21 edges > 20
    assert sum(1 for _ in orient_all(complete_graph(4), cap=6)) == 64


def test_triangles_examples():
    assert len(triangles(complete_graph(4))) == 4
    assert triangles(cycle_graph(5)) == []
    assert len(triangles(join_independent(1, path_graph(3)))) == 2


def test_triangles_sorted_unique():
    rng = random.Random(11)
    for _ in range(20):
        g = random_simple_graph(rng)
        tris = triangles(g)
        assert tris == sorted(tris)
        assert len(tris) == len(set(tris))
        for a, b, c in tris:
            assert g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)


# --- validation -----------------------------------------------------------

def test_graph_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_orientation_validation():
    p3 = path_graph(3)
    with pytest.raises(ValueError):
        Orientation(p3, [(0, 1)])  # missing edge (1, 2)
    with pytest.raises(ValueError):
        Orientation(p3, [(0, 1), (1, 0), (1, 2)])  # both directions
    with pytest.raises(ValueError):
        Orientation(p3, [(0, 1), (1, 2), (0, 2)])  # arc off a non-edge
    o = Orientation(p3, [(1, 0), (1, 2)])
    assert o.outdegree(1) == 2 and o.indegree(0) == 1


def test_bipartite_split():
    g = complete_graph(4)
    split = BipartiteSplit(g, d_side=[0, 1])
    assert split.x_side == {2, 3}
    assert split.cross_edges == {(0, 2), (0, 3), (1, 2), (1, 3)}
    with pytest.raises(ValueError):
        BipartiteSplit(g, d_side=[0], x_side=[0, 1, 2, 3])
