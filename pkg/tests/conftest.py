import random

import numpy as np
import pytest

from copymax.graphs import Graph, make_graph
from copymax.mass import EdgeMass
from copymax.objectives import pair_list


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return make_graph(n, edges)


def random_mass(s: int, rng: np.random.Generator, sparse: float = 0.0) -> EdgeMass:
    """Dirichlet mass on the pairs of [s]; optionally zero out a fraction."""
    pairs = pair_list(s)
    w = rng.dirichlet(np.ones(len(pairs)))
    if sparse > 0.0:
        keep = rng.random(len(pairs)) >= sparse
        if not keep.any():
            keep[int(rng.integers(len(pairs)))] = True
        w = w * keep
        w = w / w.sum()
    weights = {pairs[i]: float(w[i]) for i in range(len(pairs)) if w[i] > 0.0}
    return EdgeMass(s, weights)


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def nprng():
    return np.random.default_rng(20240517)
