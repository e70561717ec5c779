import math
from fractions import Fraction

import pytest

from copymax.bounds import (
    BoundTable,
    ConstructionSpec,
    Target,
    biclique_target,
    blowup_target,
    bound_table,
    build_lower_bound_graph,
    cycle_target,
    default_construction,
    lower_bound_count,
    parse_target,
    path_target,
    triangle_blowup_c6_count,
    triangle_blowup_p7_count,
    upper_bound_value,
)
from copymax.classes import sparse_k33_free
from copymax.counting import count_copies, count_path_copies
from copymax.graphs import complete_graph, cycle_graph, edge_blowup
from copymax.mass import uniform_edge_mass


def test_parse_target():
    assert parse_target("P7").pattern.n == 7
    assert parse_target("C6").pattern.n == 6
    assert parse_target("K2,4").pattern.edge_count == 8
    t = parse_target("blowup(K3,2)")
    assert t.base == complete_graph(3) and t.k == 2
    with pytest.raises(ValueError):
        parse_target("P6")  # even paths unsupported
    with pytest.raises(ValueError):
        parse_target("C5")
    with pytest.raises(ValueError):
        parse_target("Q3")


def test_upper_bound_values():
    assert upper_bound_value(path_target(5), 10) == 1000
    assert upper_bound_value(path_target(7), 30) == 120000
    assert upper_bound_value(path_target(9), 10) == Fraction(10 ** 5, 2 * 6)
    assert upper_bound_value(cycle_target(4), 10) == 50
    assert upper_bound_value(cycle_target(6), 30) == 1000
    assert upper_bound_value(cycle_target(8), 40) == 10 ** 4
    assert upper_bound_value(cycle_target(10), 10) == Fraction(10 ** 5, 120)
    assert upper_bound_value(parse_target("blowup(K3,1)"), 30) == 1000
    assert upper_bound_value(parse_target("blowup(K3,2)"), 30) == Fraction(10 ** 6, 8)
    assert upper_bound_value(parse_target("blowup(K4,1)"), 60) == 10 ** 6
    assert upper_bound_value(biclique_target(9), 9) == Fraction(9 ** 9, math.factorial(9))
    with pytest.raises(ValueError):
        upper_bound_value(biclique_target(5), 10)  # gap: 3 <= k <= 8
    # generic blow-up needs the degree condition
    assert upper_bound_value(parse_target("blowup(C5,3)"), 10) == Fraction(
        10 ** 15, math.factorial(15)
    )
    with pytest.raises(ValueError):
        upper_bound_value(parse_target("blowup(P4,2)"), 10)


def test_construction_specs():
    spec = ConstructionSpec.uniform(complete_graph(3), 30)
    assert set(spec.part_sizes.values()) == {9}
    assert spec.built_vertex_count() == 30
    with pytest.raises(ValueError):
        ConstructionSpec.uniform(complete_graph(3), 2)
    mass_spec = ConstructionSpec.from_mass(uniform_edge_mass(complete_graph(3)), 30)
    assert set(mass_spec.part_sizes.values()) == {10}
    assert mass_spec.built_vertex_count() == 33  # overshoot reported, not truncated


def test_build_lower_bound_graph_in_class():
    spec = ConstructionSpec.uniform(complete_graph(3), 30)
    g = build_lower_bound_graph(spec)
    assert g.n == 30
    assert sparse_k33_free(g, 2).member


def test_build_single_edge_base_gives_biclique():
    from copymax.counting import is_isomorphic
    from copymax.graphs import complete_bipartite

    for k in (1, 3, 5):
        g = build_lower_bound_graph(
            ConstructionSpec(complete_graph(2), {(0, 1): k}, 2 + k)
        )
        assert is_isomorphic(g, complete_bipartite(2, k))


def test_lower_bound_counts_small_cases():
    spec = ConstructionSpec.uniform(complete_graph(3), 18)  # parts of 5
    lc = lower_bound_count(spec, parse_target("blowup(K3,1)"))
    assert lc.count == 125 and lc.closed_form == 125

    spec_k2 = ConstructionSpec(complete_graph(2), {(0, 1): 7}, 9)
    lc = lower_bound_count(spec_k2, parse_target("K2,2"))
    assert lc.count == math.comb(7, 2) == lc.closed_form

    lc = lower_bound_count(spec_k2, biclique_target(3))
    assert lc.count == math.comb(7, 3) == lc.closed_form


def test_p7_structural_counter_matches_dfs():
    for parts in ((1, 1, 1), (2, 2, 2), (3, 3, 3), (2, 3, 4), (1, 2, 5), (0, 3, 3)):
        g = ConstructionSpec(
            complete_graph(3),
            {(0, 1): parts[0], (1, 2): parts[1], (0, 2): parts[2]},
            3 + sum(parts),
        )
        built = build_lower_bound_graph(g)
        assert count_path_copies(built, 7) == triangle_blowup_p7_count(*parts)


def test_c6_structural_counter_matches_dfs():
    from copymax.counting import count_cycle_copies

    for parts in ((1, 1, 1), (3, 3, 3), (2, 4, 5)):
        g = ConstructionSpec(
            complete_graph(3),
            {(0, 1): parts[0], (1, 2): parts[1], (0, 2): parts[2]},
            3 + sum(parts),
        )
        built = build_lower_bound_graph(g)
        assert count_cycle_copies(built, 6) == triangle_blowup_c6_count(*parts)
        assert triangle_blowup_c6_count(*parts) == parts[0] * parts[1] * parts[2]


def test_closed_form_matches_dfs_for_blowups():
    targets_and_specs = [
        (parse_target("blowup(K3,1)"), ConstructionSpec.uniform(complete_graph(3), 15)),
        (parse_target("blowup(K3,2)"), ConstructionSpec.uniform(complete_graph(3), 15)),
        (parse_target("C8"), ConstructionSpec.uniform(cycle_graph(4), 16)),
        (parse_target("C4"), ConstructionSpec.uniform(complete_graph(2), 8)),
        (parse_target("blowup(K4,1)"), ConstructionSpec.uniform(complete_graph(4), 16)),
    ]
    for target, spec in targets_and_specs:
        lc = lower_bound_count(spec, target)
        assert lc.closed_form is not None
        assert lc.count == lc.closed_form


def test_icosahedron_closed_form_route():
    # deleting an edge from an edge-transitive base multiplies the closed form
    from copymax.graphs import icosahedron_graph

    ico = icosahedron_graph()
    iminus = ico.remove_edge(*ico.sorted_edges[0])
    spec = ConstructionSpec.uniform(ico, 12 + 30)  # one part vertex per edge
    target = Target("bup(I-,1)", "blowup", edge_blowup(iminus, 1), iminus, 1)
    from copymax.bounds import _closed_form_count

    assert _closed_form_count(spec, target) == 30  # 30 copies, 1^29 each


def test_bound_table_shape_and_trends():
    table = bound_table([path_target(7), cycle_target(6)], [12, 21, 30])
    assert len(table.rows) == 6
    by_target = {}
    for row in table.rows:
        assert 0.0 <= row.ratio <= 1.0 + 1e-12
        by_target.setdefault(row.target, []).append(row.ratio)
    for ratios in by_target.values():
        assert ratios == sorted(ratios)
    p7_rows = [r for r in table.rows if r.target == "P7"]
    assert [r.lower for r in p7_rows] == [594, 12420, 68040]
    assert p7_rows[-1].upper == 120000


def test_bound_table_c6_ratio_at_30():
    table = bound_table([cycle_target(6)], [30])
    assert table.rows[0].ratio >= 0.5


def test_empty_table():
    table = bound_table([], [12, 30])
    assert table.rows == ()
    assert table.to_text() == "(empty table)"
    assert table.to_json_dict() == {"rows": []}


def test_table_renderers():
    table = bound_table([cycle_target(6)], [12])
    text = table.to_text()
    assert "C6" in text and "ratio" in text
    d = table.to_json_dict()
    assert d["rows"][0]["lower"] == 27
