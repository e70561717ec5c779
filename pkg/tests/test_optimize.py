import math
from fractions import Fraction

import pytest

from copymax.graphs import (
    complete_graph,
    cycle_graph,
    icosahedron_graph,
    matching_graph,
    path_graph,
    star_graph,
)
from copymax.mass import EdgeMass, single_pair_mass, uniform_edge_mass
from copymax.objectives import BlowupObjective, PathObjective
from copymax.optimize import (
    OptimizerConfig,
    certified_optimum,
    check_mass_bounds,
    check_regularity,
    edgetrans_lower,
    kkt_residual,
    largek_threshold,
    maximize,
    support_bound,
)

FAST = OptimizerConfig(restarts=8, max_iterations=20_000, seed=5)


def test_maximize_path_two():
    r = maximize(PathObjective(2), OptimizerConfig(restarts=6, sizes=(2, 3, 4), seed=1))
    assert abs(r.value - 2.0) < 1e-9
    assert r.converged
    assert len(r.best_mass.support_edges()) == 1


def test_maximize_triangle():
    r = maximize(
        BlowupObjective(complete_graph(3), 1),
        OptimizerConfig(restarts=8, sizes=(3, 4, 5), seed=2),
    )
    assert abs(r.value - 3 ** -3) < 1e-10
    assert r.kkt_residual < 1e-6
    # support collapses to a triangle
    assert len(r.best_mass.support_edges()) == 3


def test_value_matches_best_mass_eval():
    obj = BlowupObjective(cycle_graph(4), 1)
    r = maximize(obj, OptimizerConfig(restarts=6, sizes=(4, 5), seed=3))
    assert abs(float(obj.reference_value(r.best_mass)) - r.value) < 1e-12


def test_deterministic_under_seed():
    cfg = OptimizerConfig(restarts=5, sizes=(3, 4), seed=42, max_iterations=5_000)
    a = maximize(BlowupObjective(complete_graph(3), 1), cfg)
    b = maximize(BlowupObjective(complete_graph(3), 1), cfg)
    assert a.value == b.value
    assert a.kkt_residual == b.kkt_residual
    assert a.best_mass.weights == b.best_mass.weights


def test_scaling_objective_keeps_argmax():
    cfg = OptimizerConfig(restarts=5, sizes=(3, 4), seed=9, max_iterations=5_000)
    base = maximize(BlowupObjective(complete_graph(3), 1), cfg)
    scaled = maximize(BlowupObjective(complete_graph(3), 1, scale=7.0), cfg)
    assert math.isclose(scaled.value, 7.0 * base.value, rel_tol=1e-9)
    for e, w in base.best_mass.weights.items():
        assert math.isclose(scaled.best_mass.mu(*e), w, rel_tol=1e-9, abs_tol=1e-12)


def test_smaller_ground_wins_ties():
    r = maximize(PathObjective(2), OptimizerConfig(restarts=4, sizes=(2, 3, 4), seed=0))
    assert r.best_mass.ground_size == 2


def test_skips_small_sizes_with_note():
    r = maximize(
        BlowupObjective(cycle_graph(4), 1),
        OptimizerConfig(restarts=4, sizes=(2, 4, 5), seed=0, max_iterations=5_000),
    )
    assert any("skipped ground size 2" in note for note in r.notes)


def test_degenerate_families_flagged():
    r = maximize(
        BlowupObjective(star_graph(2), 1),
        OptimizerConfig(restarts=4, sizes=(3, 4, 5), seed=0, max_iterations=5_000),
    )
    assert any("supremum not achieved" in n for n in r.notes)
    assert r.value < 0.5  # approaches 1/2! from below
    r = maximize(
        BlowupObjective(matching_graph(2), 1),
        OptimizerConfig(restarts=4, sizes=(4, 5), seed=0, max_iterations=5_000),
    )
    assert any("supremum not achieved" in n for n in r.notes)


def test_kkt_residual_zero_at_symmetric_optima():
    assert kkt_residual(
        uniform_edge_mass(complete_graph(3)), PathObjective(3)
    ).exact_residual == 0
    for t, k in ((3, 1), (4, 2)):
        rep = kkt_residual(
            uniform_edge_mass(complete_graph(t)), BlowupObjective(complete_graph(t), k)
        )
        assert rep.exact_residual == 0
    rep = kkt_residual(uniform_edge_mass(cycle_graph(4)), PathObjective(4))
    assert rep.exact_residual == 0
    assert rep.stationarity == pytest.approx(5 / 32)


def test_kkt_residual_positive_after_perturbation():
    w = {(0, 1): Fraction(1, 3), (0, 2): Fraction(1, 3), (1, 2): Fraction(1, 3)}
    w[(0, 1)] += Fraction(1, 10)
    total = sum(w.values())
    perturbed = EdgeMass(3, {e: v / total for e, v in w.items()})
    rep = kkt_residual(perturbed, PathObjective(3))
    assert rep.residual > 1e-3


def test_kkt_float_mode_matches_rational():
    mass = uniform_edge_mass(cycle_graph(4))
    rep_exact = kkt_residual(mass, BlowupObjective(cycle_graph(4), 2))
    rep_float = kkt_residual(mass.as_floats(), BlowupObjective(cycle_graph(4), 2))
    assert rep_exact.exact_residual == 0
    assert rep_float.residual < 1e-15


def test_regularity_identities_exact():
    rep = check_regularity(uniform_edge_mass(complete_graph(3)), complete_graph(3), 1)
    assert rep.max_edge_violation == 0 and rep.max_vertex_violation == 0
    rep = check_regularity(uniform_edge_mass(cycle_graph(4)), cycle_graph(4), 2)
    assert rep.max_edge_violation == 0 and rep.max_vertex_violation == 0


def test_regularity_violation_scales_linearly():
    violations = []
    for eps in (Fraction(1, 1000), Fraction(2, 1000), Fraction(4, 1000)):
        w = {
            (0, 1): Fraction(1, 3) + eps,
            (0, 2): Fraction(1, 3) - eps,
            (1, 2): Fraction(1, 3),
        }
        rep = check_regularity(EdgeMass(3, w), complete_graph(3), 1)
        violations.append(rep.max_edge_violation)
    assert violations[0] > 0
    assert violations[1] == pytest.approx(2 * violations[0], rel=0.2)
    assert violations[2] == pytest.approx(4 * violations[0], rel=0.3)


def test_mass_bounds_trivial_equalities():
    for g, k in ((complete_graph(3), 1), (cycle_graph(4), 1), (complete_graph(4), 1)):
        rep = check_mass_bounds(uniform_edge_mass(g), g, k)
        assert rep.ok
        assert rep.max_edge_violation == 0  # 1 - m/m = 0 <= (1-1/m)^(km)


def test_support_bound_values():
    assert support_bound(complete_graph(3), 1).cap == 6
    assert support_bound(cycle_graph(4), 1).cap == 8
    assert support_bound(cycle_graph(7), 1).cap == 14
    assert support_bound(complete_graph(4), 1).cap == 6
    with pytest.raises(ValueError):
        support_bound(path_graph(4), 1)  # k * min_degree < 2


def test_growing_past_support_bound_never_helps():
    for h, sizes_at, sizes_past in (
        (complete_graph(3), (3, 4, 5, 6), (7, 8, 9)),
        (complete_graph(4), (4, 5, 6), (7, 8, 9)),
    ):
        obj = BlowupObjective(h, 1)
        at = maximize(obj, OptimizerConfig(restarts=6, sizes=sizes_at, seed=4))
        past = maximize(
            obj, OptimizerConfig(restarts=6, sizes=sizes_at + sizes_past, seed=4)
        )
        assert past.value <= at.value + 1e-7


def test_largek_threshold_values():
    assert largek_threshold(1) == 1.0
    assert abs(largek_threshold(3) - 1.6063) < 1e-3
    for m in range(2, 40):
        assert largek_threshold(m) > 1.0


def test_certified_optimum_paths():
    c = certified_optimum(PathObjective(2))
    assert c.exact == 2 and c.achieved
    c = certified_optimum(PathObjective(3))
    assert c.exact == Fraction(8, 27) and c.achieved
    c = certified_optimum(PathObjective(5))
    assert c.exact is None
    assert c.lower == Fraction(8, 5 ** 5) and c.upper == Fraction(1, 24)


def test_certified_optimum_blowups():
    assert certified_optimum(BlowupObjective(complete_graph(2), 3)).exact == 1
    c = certified_optimum(BlowupObjective(complete_graph(4), 2))
    assert c.exact == Fraction(1, 6 ** 12) and c.achieved
    c = certified_optimum(BlowupObjective(cycle_graph(4), 1))
    assert c.exact == Fraction(1, 4 ** 4)
    # large-multiplicity regime: P_4 at k = 2 crosses threshold 1.606
    c = certified_optimum(BlowupObjective(path_graph(4), 2))
    assert c.exact == Fraction(1, 3 ** 6) and c.achieved
    # stars and matchings at k = 1: supremum known, never attained
    c = certified_optimum(BlowupObjective(star_graph(3), 1))
    assert c.exact == Fraction(1, 6) and c.achieved is False
    c = certified_optimum(BlowupObjective(matching_graph(2), 1))
    assert c.exact == Fraction(1, 2) and c.achieved is False
    # bracket case with the edge-transitive completion: P_4 at k = 1
    c = certified_optimum(BlowupObjective(path_graph(4), 1))
    assert c.exact is None and c.lower == Fraction(1, 16) and c.upper == Fraction(1, 6)
    # C_5 at k = 1: below threshold, no completion; uniform lower bound
    c = certified_optimum(BlowupObjective(cycle_graph(5), 1))
    assert c.exact is None and c.lower == Fraction(1, 5 ** 5)
    assert c.achieved is True  # min degree 2 at k = 1 keeps the sup attained


def test_edgetrans_lower_reports():
    rep = edgetrans_lower(cycle_graph(4), 1)
    assert rep.value == Fraction(1, 16)
    assert rep.ratio_to_uniform == Fraction(27, 16)
    assert rep.consistent
    ico = icosahedron_graph()
    rep3 = edgetrans_lower(ico, 3)
    assert rep3.copies_of_deleted == 30
    assert rep3.consistent
    assert float(rep3.ratio_to_uniform) > 1.57
    assert float(edgetrans_lower(ico, 4).ratio_to_uniform) < 1.0
    with pytest.raises(ValueError):
        edgetrans_lower(path_graph(4), 1)  # not edge-transitive


def test_probb_envelope_on_optimizer_results():
    cases = [
        (BlowupObjective(complete_graph(3), 1), (3, 4, 5)),
        (BlowupObjective(cycle_graph(4), 2), (4, 5)),
        (BlowupObjective(path_graph(4), 1), (4, 5, 6)),
    ]
    for obj, sizes in cases:
        r = maximize(obj, OptimizerConfig(restarts=6, sizes=sizes, seed=8))
        assert r.value <= obj.upper_bound() + 1e-9
        seed_value = float(obj.reference_value(uniform_edge_mass(obj.h)))
        assert r.value >= seed_value - 1e-9
