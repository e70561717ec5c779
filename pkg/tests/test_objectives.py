import math
from fractions import Fraction

import numpy as np
import pytest

from copymax.graphs import complete_graph, cycle_graph, path_graph
from copymax.mass import uniform_edge_mass
from copymax.objectives import (
    BlowupObjective,
    PathObjective,
    mass_to_vector,
    pair_list,
    vector_to_mass,
)
from conftest import random_mass


def test_compiled_values_match_reference(nprng):
    objectives = [
        PathObjective(2),
        PathObjective(3),
        PathObjective(4),
        BlowupObjective(complete_graph(3), 1),
        BlowupObjective(complete_graph(3), 2),
        BlowupObjective(cycle_graph(4), 1),
        BlowupObjective(cycle_graph(4), 2),
        BlowupObjective(path_graph(4), 1),
    ]
    for _ in range(25):
        s = int(nprng.integers(4, 7))
        mass = random_mass(s, nprng)
        w = mass_to_vector(mass)
        for obj in objectives:
            if s < obj.min_ground:
                continue
            ref = float(obj.reference_value(mass))
            fast = obj.value(s, w)
            assert math.isclose(ref, fast, rel_tol=1e-11, abs_tol=1e-14)


def test_compiled_gradients_match_reference(nprng):
    objectives = [
        PathObjective(3),
        PathObjective(4),
        BlowupObjective(complete_graph(3), 2),
        BlowupObjective(cycle_graph(4), 1),
    ]
    for _ in range(10):
        s = 5
        mass = random_mass(s, nprng)
        w = mass_to_vector(mass)
        for obj in objectives:
            _, g = obj.value_grad(s, w)
            ref = obj.reference_gradient(mass)
            for i, e in enumerate(pair_list(s)):
                assert math.isclose(g[i], float(ref[e]), rel_tol=1e-9, abs_tol=1e-12)


def test_value_grad_consistent_with_value(nprng):
    obj = BlowupObjective(cycle_graph(4), 2)
    for _ in range(10):
        w = nprng.dirichlet(np.ones(15))
        v1 = obj.value(6, w)
        v2, _ = obj.value_grad(6, w)
        assert math.isclose(v1, v2, rel_tol=1e-13)


def test_value_many_matches_single(nprng):
    obj = PathObjective(3)
    batch = nprng.dirichlet(np.ones(10), size=40)
    vals = obj.value_many(5, batch)
    for i in range(40):
        assert math.isclose(float(vals[i]), obj.value(5, batch[i]), rel_tol=1e-12)


def test_upper_bounds():
    assert PathObjective(2).upper_bound_exact() == 2
    assert PathObjective(3).upper_bound_exact() == Fraction(1, 2)
    assert PathObjective(5).upper_bound_exact() == Fraction(1, 24)
    assert BlowupObjective(complete_graph(3), 1).upper_bound_exact() == Fraction(1, 6)
    assert BlowupObjective(cycle_graph(4), 2).upper_bound_exact() == Fraction(
        2 ** 4, math.factorial(8)
    )


def test_mass_vector_roundtrip(nprng):
    for _ in range(10):
        s = int(nprng.integers(3, 7))
        mass = random_mass(s, nprng)
        back = vector_to_mass(s, mass_to_vector(mass))
        assert back.ground_size == s
        for e, w in mass.weights.items():
            assert math.isclose(back.mu(*e), w, rel_tol=1e-12)


def test_seed_masses():
    po = PathObjective(3)
    seeds = po.seed_masses(5)
    assert len(seeds) == 1 and math.isclose(seeds[0].sum(), 1.0)
    assert PathObjective(2).seed_masses(4)[0].max() == 1.0
    bo = BlowupObjective(cycle_graph(4), 1)
    assert bo.seed_masses(3) == []
    seed = bo.seed_masses(6)[0]
    assert np.count_nonzero(seed) == 4


def test_objective_validation():
    with pytest.raises(ValueError):
        PathObjective(1)
    with pytest.raises(ValueError):
        BlowupObjective(cycle_graph(4), 0)
    from copymax.graphs import make_graph

    with pytest.raises(ValueError):
        BlowupObjective(make_graph(3, [(0, 1)]), 1)  # isolated vertex


def test_scale_multiplies_values(nprng):
    mass = random_mass(5, nprng)
    w = mass_to_vector(mass)
    base = PathObjective(3).value(5, w)
    scaled = PathObjective(3, scale=7.0).value(5, w)
    assert math.isclose(scaled, 7.0 * base, rel_tol=1e-12)
