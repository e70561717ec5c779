import json
import random

import pytest

from copymax.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_blowup,
    edge_blowup_map,
    from_graph6,
    graph_from_json,
    graph_to_json,
    icosahedron_graph,
    is_complete,
    is_cycle,
    is_path,
    make_graph,
    matching_graph,
    path_graph,
    star_graph,
    to_graph6,
)
from conftest import random_graph


def test_make_graph_validates():
    with pytest.raises(ValueError):
        make_graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        make_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        make_graph(3, [(0, 1), (1, 0)])
    g = make_graph(3, [(2, 0)])
    assert g.edges == frozenset({(0, 2)})


def test_named_constructors():
    assert cycle_graph(4).n == 4 and cycle_graph(4).edge_count == 4
    assert complete_graph(4).edge_count == 6
    assert path_graph(5).edge_count == 4
    assert complete_bipartite(2, 3).edge_count == 6
    assert star_graph(4).degree_sequence == (4, 1, 1, 1, 1)
    assert matching_graph(3).degree_sequence == (1,) * 6


def test_icosahedron_shape():
    g = icosahedron_graph()
    assert g.n == 12
    assert g.edge_count == 30
    assert g.degree_sequence == (5,) * 12


def test_degrees_and_codegrees():
    g = complete_bipartite(2, 20)
    assert g.degree(0) == 20
    assert g.degree(5) == 2
    assert g.codegree(0, 1) == 20
    assert g.codegree(2, 3) == 2


def test_blowup_counts():
    k23 = edge_blowup(complete_graph(2), 3)
    assert k23.n == 5 and k23.edge_count == 6
    # K_2 blown up k times is K_{2,k}
    from copymax.counting import is_isomorphic

    assert is_isomorphic(k23, complete_bipartite(2, 3))
    c6 = edge_blowup(cycle_graph(3), 1)
    assert is_isomorphic(c6, cycle_graph(6))
    c8 = edge_blowup(cycle_graph(4), 1)
    assert is_isomorphic(c8, cycle_graph(8))
    big = edge_blowup(complete_graph(3), 10)
    assert big.n == 3 + 3 * 10
    assert sum(1 for v in range(big.n) if big.degree(v) == 2) == 30


def test_blowup_rejects_zero_k():
    with pytest.raises(ValueError):
        edge_blowup(complete_graph(3), 0)


def test_blowup_new_vertices_have_degree_two(rng):
    for _ in range(15):
        h = random_graph(rng.randrange(2, 6), rng.uniform(0.4, 1.0), rng)
        if h.edge_count == 0:
            continue
        k = rng.randrange(1, 4)
        g = edge_blowup(h, k)
        assert g.n == h.n + k * h.edge_count
        assert all(g.degree(v) == 2 for v in range(h.n, g.n))


def test_blowup_map_partial_sizes():
    g = edge_blowup_map(complete_graph(3), {(0, 1): 2, (0, 2): 0, (1, 2): 1})
    assert g.n == 6
    # zero-size edge just disappears
    assert not g.has_edge(0, 2)
    with pytest.raises(ValueError):
        edge_blowup_map(complete_graph(3), {(0, 1): -1})
    with pytest.raises(ValueError):
        edge_blowup_map(path_graph(3), {(0, 2): 1})


def test_structure_predicates():
    assert is_path(path_graph(4))
    assert not is_path(cycle_graph(4))
    assert is_cycle(cycle_graph(5))
    assert not is_cycle(path_graph(5))
    assert is_complete(complete_graph(1))
    assert is_complete(complete_graph(5))
    assert not is_complete(cycle_graph(4))


def test_graph6_known_values():
    assert to_graph6(complete_graph(2)) == "A_"
    assert to_graph6(Graph(0, frozenset())) == "?"
    assert to_graph6(Graph(1, frozenset())) == "@"


def test_graph6_roundtrip(rng):
    for _ in range(200):
        n = rng.randrange(0, 12)
        g = random_graph(n, rng.random(), rng)
        assert from_graph6(to_graph6(g)) == g


def test_graph6_long_form_roundtrip(rng):
    g = random_graph(70, 0.05, rng)
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g


def test_graph6_rejects_bad_padding():
    with pytest.raises(ValueError):
        from_graph6("A" + chr(63 + 16))  # nonzero padding bit


def test_json_roundtrip(rng):
    for _ in range(50):
        g = random_graph(rng.randrange(0, 9), 0.4, rng)
        assert graph_from_json(graph_to_json(g)) == g
    d = json.loads(graph_to_json(complete_graph(3)))
    assert d == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


def test_induced_subgraph():
    g = complete_graph(5).remove_edge(0, 1)
    sub = g.induced_subgraph([0, 1, 4])
    assert sub.n == 3
    assert sub.edges == frozenset({(0, 2), (1, 2)})


def test_components():
    g = make_graph(5, [(0, 1), (2, 3)])
    comps = g.connected_components()
    assert sorted(sorted(c) for c in comps) == [[0, 1], [2, 3], [4]]
