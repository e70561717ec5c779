"""Vectorized objective evaluation over the simplex of pair weights.

Each objective compiles, per ground size, index arrays over the C(s, 2)
pairs so that values and gradients are a handful of numpy operations. The
pure-Python functionals in `mass` remain the reference implementation; tests
hold the two routes together.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from . import mass as massmod
from .counting import enumerate_copies
from .graphs import Edge, Graph, complete_graph, cycle_graph
from .mass import EdgeMass


def pair_list(s: int) -> list[Edge]:
    return list(combinations(range(s), 2))


def pair_index(s: int) -> dict[Edge, int]:
    return {e: i for i, e in enumerate(pair_list(s))}


def mass_to_vector(mass: EdgeMass) -> np.ndarray:
    idx = pair_index(mass.ground_size)
    w = np.zeros(len(idx))
    for e, val in mass.weights.items():
        w[idx[e]] = float(val)
    return w


def vector_to_mass(s: int, w: np.ndarray) -> EdgeMass:
    pairs = pair_list(s)
    weights = {pairs[i]: float(w[i]) for i in range(len(pairs)) if w[i] > 0.0}
    total = sum(weights.values())
    if abs(total - 1.0) > 1e-13 and total > 0:
        weights = {e: v / total for e, v in weights.items()}
    return EdgeMass(s, weights)


def _prefix_suffix_loo(a: np.ndarray) -> np.ndarray:
    """Row-wise leave-one-out products of a 2-d array."""
    rows, cols = a.shape
    pre = np.ones((rows, cols + 1))
    suf = np.ones((rows, cols + 1))
    for j in range(cols):
        pre[:, j + 1] = pre[:, j] * a[:, j]
    for j in range(cols - 1, -1, -1):
        suf[:, j] = suf[:, j + 1] * a[:, j]
    return pre[:, :-1] * suf[:, 1:]


class _CompiledPath:
    def __init__(self, m: int, s: int):
        self.m, self.s = m, s
        idx = pair_index(s)
        tuples = list(permutations(range(s), m))
        self.first = np.array([t[0] for t in tuples], dtype=np.int64)
        self.last = np.array([t[-1] for t in tuples], dtype=np.int64)
        self.slots = np.array(
            [[idx[tuple(sorted((t[i], t[i + 1])))] for i in range(m - 1)] for t in tuples],
            dtype=np.int64,
        )
        inc = np.zeros((s, len(idx)))
        for (u, v), i in idx.items():
            inc[u, i] = 1.0
            inc[v, i] = 1.0
        self.incidence = inc

    def value_grad(self, w: np.ndarray) -> tuple[float, np.ndarray]:
        d = self.incidence @ w
        a = w[self.slots]
        prod = a.prod(axis=1)
        df, dl = d[self.first], d[self.last]
        value = float(np.dot(df * dl, prod))
        vertex_acc = np.zeros(self.s)
        np.add.at(vertex_acc, self.first, prod * dl)
        np.add.at(vertex_acc, self.last, df * prod)
        grad = self.incidence.T @ vertex_acc
        loo = _prefix_suffix_loo(a)
        coef = df * dl
        for j in range(self.m - 1):
            np.add.at(grad, self.slots[:, j], coef * loo[:, j])
        return value, grad

    def value(self, w: np.ndarray) -> float:
        d = self.incidence @ w
        prod = w[self.slots].prod(axis=1)
        return float(np.dot(d[self.first] * d[self.last], prod))

    def value_many(self, weights: np.ndarray) -> np.ndarray:
        d = weights @ self.incidence.T
        prod = weights[:, self.slots].prod(axis=2)
        return np.einsum(
            "bt,bt,bt->b", d[:, self.first], d[:, self.last], prod
        )


class _CompiledBlowup:
    def __init__(self, h: Graph, k: int, s: int):
        self.k, self.s = k, s
        idx = pair_index(s)
        copies = enumerate_copies(complete_graph(s), h).copies
        self.copy_slots = np.array(
            [sorted(idx[e] for e in copy) for copy in copies], dtype=np.int64
        )
        self.n_copies = len(copies)

    def value_grad(self, w: np.ndarray) -> tuple[float, np.ndarray]:
        grad = np.zeros(self.s * (self.s - 1) // 2)
        if self.n_copies == 0:
            return 0.0, grad
        wk = w ** self.k
        a = wk[self.copy_slots]
        value = float(a.prod(axis=1).sum())
        loo = _prefix_suffix_loo(a)
        base = w[self.copy_slots] ** (self.k - 1) if self.k > 1 else np.ones_like(a)
        for j in range(a.shape[1]):
            np.add.at(grad, self.copy_slots[:, j], self.k * base[:, j] * loo[:, j])
        return value, grad

    def value(self, w: np.ndarray) -> float:
        if self.n_copies == 0:
            return 0.0
        return float((w[self.copy_slots] ** self.k).prod(axis=1).sum())

    def value_many(self, weights: np.ndarray) -> np.ndarray:
        if self.n_copies == 0:
            return np.zeros(weights.shape[0])
        return (weights[:, self.copy_slots] ** self.k).prod(axis=2).sum(axis=1)


_COMPILE_CACHE: dict[tuple, object] = {}


@dataclass(frozen=True)
class PathObjective:
    """The path functional optp( . ; m), maximized over pair-weight simplices."""

    m: int
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("path parameter m must be at least 2")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def kind(self) -> str:
        return "optp"

    @property
    def degree(self) -> int:
        return self.m + 1

    @property
    def min_ground(self) -> int:
        return self.m

    def label(self) -> str:
        return f"optp(m={self.m})"

    def upper_bound_exact(self) -> Fraction:
        """Certified envelope for the supremum (scale 1)."""
        return Fraction(2) if self.m == 2 else Fraction(1, math.factorial(self.m - 1))

    def upper_bound(self) -> float:
        return float(self.upper_bound_exact()) * self.scale

    def gradient_sup_bound(self) -> float:
        # two walk-sum endpoint terms per edge end plus m-1 slot terms
        return (self.m + 3) * self.scale

    def compiled(self, s: int) -> _CompiledPath:
        key = ("optp", self.m, s)
        if key not in _COMPILE_CACHE:
            _COMPILE_CACHE[key] = _CompiledPath(self.m, s)
        return _COMPILE_CACHE[key]  # type: ignore[return-value]

    def value(self, s: int, w: np.ndarray) -> float:
        return self.compiled(s).value(w) * self.scale

    def value_grad(self, s: int, w: np.ndarray) -> tuple[float, np.ndarray]:
        v, g = self.compiled(s).value_grad(w)
        return v * self.scale, g * self.scale

    def value_many(self, s: int, weights: np.ndarray) -> np.ndarray:
        return self.compiled(s).value_many(weights) * self.scale

    def seed_masses(self, s: int) -> list[np.ndarray]:
        idx = pair_index(s)
        dim = len(idx)
        seeds = []
        if self.m == 2:
            w = np.zeros(dim)
            w[idx[(0, 1)]] = 1.0
            seeds.append(w)
        elif s >= self.m:
            cyc = cycle_graph(self.m)
            w = np.zeros(dim)
            for e in cyc.sorted_edges:
                w[idx[e]] = 1.0 / cyc.edge_count
            seeds.append(w)
        return seeds

    def reference_value(self, mass: EdgeMass):
        v = massmod.path_functional(mass, self.m)
        return v * self.scale if self.scale != 1.0 else v

    def reference_gradient(self, mass: EdgeMass):
        g = massmod.path_functional_gradient(mass, self.m)
        if self.scale != 1.0:
            g = {e: val * self.scale for e, val in g.items()}
        return g


@dataclass(frozen=True)
class BlowupObjective:
    """The blow-up functional optb( . ; h, k) over pair-weight simplices."""

    h: Graph
    k: int
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.h.has_isolated_vertices() or self.h.edge_count == 0:
            raise ValueError("pattern must have edges and no isolated vertices")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def kind(self) -> str:
        return "optb"

    @property
    def degree(self) -> int:
        return self.k * self.h.edge_count

    @property
    def min_ground(self) -> int:
        return self.h.n

    def label(self) -> str:
        return f"optb(|V|={self.h.n}, m={self.h.edge_count}, k={self.k})"

    def upper_bound_exact(self) -> Fraction:
        m = self.h.edge_count
        return Fraction(math.factorial(self.k) ** m, math.factorial(self.k * m))

    def upper_bound(self) -> float:
        return float(self.upper_bound_exact()) * self.scale

    def gradient_sup_bound(self) -> float:
        return self.k * self.scale

    def compiled(self, s: int) -> _CompiledBlowup:
        key = ("optb", self.h.n, self.h.edges, self.k, s)
        if key not in _COMPILE_CACHE:
            _COMPILE_CACHE[key] = _CompiledBlowup(self.h, self.k, s)
        return _COMPILE_CACHE[key]  # type: ignore[return-value]

    def value(self, s: int, w: np.ndarray) -> float:
        return self.compiled(s).value(w) * self.scale

    def value_grad(self, s: int, w: np.ndarray) -> tuple[float, np.ndarray]:
        v, g = self.compiled(s).value_grad(w)
        return v * self.scale, g * self.scale

    def value_many(self, s: int, weights: np.ndarray) -> np.ndarray:
        return self.compiled(s).value_many(weights) * self.scale

    def seed_masses(self, s: int) -> list[np.ndarray]:
        if s < self.h.n:
            return []
        idx = pair_index(s)
        w = np.zeros(len(idx))
        for e in self.h.sorted_edges:
            w[idx[e]] = 1.0 / self.h.edge_count
        return [w]

    def reference_value(self, mass: EdgeMass):
        v = massmod.blowup_functional(mass, self.h, self.k)
        return v * self.scale if self.scale != 1.0 else v

    def reference_gradient(self, mass: EdgeMass):
        g = massmod.blowup_functional_gradient(mass, self.h, self.k)
        if self.scale != 1.0:
            g = {e: val * self.scale for e, val in g.items()}
        return g


Objective = PathObjective | BlowupObjective
