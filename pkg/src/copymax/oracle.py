"""Independent brute-force verification: scalar inequalities, coloring scans,
simplex grid search, and exhaustive extremal search over tiny graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .classes import is_planar, sparse_k33_free
from .counting import canonical_key, count_copies
from .graphs import Graph
from .objectives import Objective, pair_list, vector_to_mass
from .mass import EdgeMass


@dataclass(frozen=True)
class GridSpec:
    dimension: int
    resolution: int
    mode: str = "float"

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.mode not in ("float", "rational"):
            raise ValueError("mode must be 'float' or 'rational'")


def simplex_lattice(dimension: int, resolution: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer tuples of the given dimension summing to resolution."""

    def rec(prefix: list[int], remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield tuple(prefix + [remaining])
            return
        for v in range(remaining + 1):
            yield from rec(prefix + [v], remaining - v, slots - 1)

    yield from rec([], resolution, dimension)


@dataclass(frozen=True)
class InequalityReport:
    name: str
    random_samples: int
    grid_points: int
    violations: int
    max_ratio: float
    argmax: tuple
    equality_cases: int
    ok: bool


def _ratio_report(name, pairs, exact) -> InequalityReport:
    """pairs: iterable of (lhs, rhs, witness); ratios compare lhs against rhs."""
    max_ratio = 0.0
    argmax: tuple = ()
    violations = 0
    equalities = 0
    count_grid = 0
    count_rand = 0
    for lhs, rhs, witness, from_grid in pairs:
        if from_grid:
            count_grid += 1
        else:
            count_rand += 1
        if rhs == 0:
            if lhs > 0:
                violations += 1
            continue
        ratio = lhs / rhs
        if exact:
            if ratio == 1:
                equalities += 1
            if ratio > 1:
                violations += 1
        elif ratio > 1 + 1e-12:
            violations += 1
        fratio = float(ratio)
        if fratio > max_ratio:
            max_ratio = fratio
            argmax = witness
    return InequalityReport(
        name, count_rand, count_grid, violations, max_ratio, argmax, equalities,
        violations == 0,
    )


def _samples(dimension: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 1.0, size=(samples, dimension))


def verify_square_pair_bound(samples: int, grid: GridSpec, seed: int = 0) -> InequalityReport:
    """(sum a_i^2)^2 - sum a_i^4 <= (1/8) (sum a_i)^4 for nonnegative a."""

    def cases():
        if grid.mode == "rational":
            for t in simplex_lattice(grid.dimension, grid.resolution):
                a = [Fraction(x, grid.resolution) for x in t]
                q = sum(x * x for x in a)
                lhs = q * q - sum(x ** 4 for x in a)
                rhs = Fraction(1, 8) * sum(a) ** 4
                yield lhs, rhs, tuple(a), True
        else:
            for t in simplex_lattice(grid.dimension, grid.resolution):
                a = np.array(t, dtype=float) / grid.resolution
                q = float((a * a).sum())
                lhs = q * q - float((a ** 4).sum())
                rhs = 0.125 * float(a.sum()) ** 4
                yield lhs, rhs, tuple(a), True
        for row in _samples(grid.dimension, samples, seed):
            q = float((row * row).sum())
            lhs = q * q - float((row ** 4).sum())
            rhs = 0.125 * float(row.sum()) ** 4
            yield lhs, rhs, tuple(row), False

    return _ratio_report("square_pair_bound", cases(), grid.mode == "rational")


def verify_cross_pair_bound(samples: int, grid: GridSpec, seed: int = 0) -> InequalityReport:
    """(sum a_i b_i)^2 - sum a_i^2 b_i^2 <= (1/8)(sum a)^2 (sum b)^2.

    Grid points pair each lattice vector with itself, its reverse, and one
    seeded random lattice partner; random samples draw both vectors."""
    rng = np.random.default_rng(seed + 1)

    def ineq(a, b, exact):
        s = sum(x * y for x, y in zip(a, b))
        lhs = s * s - sum((x * y) ** 2 for x, y in zip(a, b))
        if exact:
            rhs = Fraction(1, 8) * sum(a) ** 2 * sum(b) ** 2
        else:
            rhs = 0.125 * sum(a) ** 2 * sum(b) ** 2
        return lhs, rhs

    def cases():
        lattice = list(simplex_lattice(grid.dimension, grid.resolution))
        for t in lattice:
            partners = [t, tuple(reversed(t)), tuple(int(x) for x in rng.permutation(t))]
            for p in partners:
                if grid.mode == "rational":
                    a = [Fraction(x, grid.resolution) for x in t]
                    b = [Fraction(x, grid.resolution) for x in p]
                else:
                    a = [x / grid.resolution for x in t]
                    b = [x / grid.resolution for x in p]
                lhs, rhs = ineq(a, b, grid.mode == "rational")
                yield lhs, rhs, (tuple(a), tuple(b)), True
        for _ in range(samples):
            a = rng.uniform(0.0, 1.0, grid.dimension)
            b = rng.uniform(0.0, 1.0, grid.dimension)
            lhs, rhs = ineq(list(a), list(b), False)
            yield lhs, rhs, (tuple(a), tuple(b)), False

    return _ratio_report("cross_pair_bound", cases(), grid.mode == "rational")


def verify_cyclic_quartic_bound(samples: int, grid: GridSpec, seed: int = 0) -> InequalityReport:
    """a1^2 a2^2 + a2^2 a3^2 + a3^2 a1^2 <= ((a1+a2+a3)/2)^4, three variables."""
    if grid.dimension != 3:
        raise ValueError("this inequality is three-dimensional")

    def ineq(a, exact):
        lhs = a[0] ** 2 * a[1] ** 2 + a[1] ** 2 * a[2] ** 2 + a[2] ** 2 * a[0] ** 2
        half = sum(a) / 2 if not exact else Fraction(sum(a), 2)
        return lhs, half ** 4

    def cases():
        for t in simplex_lattice(3, grid.resolution):
            if grid.mode == "rational":
                a = [Fraction(x, grid.resolution) for x in t]
            else:
                a = [x / grid.resolution for x in t]
            lhs, rhs = ineq(a, grid.mode == "rational")
            yield lhs, rhs, tuple(a), True
        for row in _samples(3, samples, seed + 2):
            lhs, rhs = ineq(list(row), False)
            yield lhs, rhs, tuple(row), False

    return _ratio_report("cyclic_quartic_bound", cases(), grid.mode == "rational")


# ---------------------------------------------------------------------------
# Two-coloring scan: every 2-coloring of Z/mZ admits i with
# chi(i) = chi(i+2) = 0 or chi(i) = chi(i+3) = 1.

def cyclic_two_coloring_ok_scan(m: int, coloring: int) -> bool:
    """Direct index scan for one bitmask coloring (bit i = chi(i))."""
    for i in range(m):
        a = (coloring >> i) & 1
        if a == 0 and (coloring >> ((i + 2) % m)) & 1 == 0:
            return True
        if a == 1 and (coloring >> ((i + 3) % m)) & 1 == 1:
            return True
    return False


def cyclic_two_coloring_violations_scan(m: int) -> int:
    return sum(
        0 if cyclic_two_coloring_ok_scan(m, chi) else 1 for chi in range(1 << m)
    )


def cyclic_two_coloring_violations_bitmask(m: int) -> int:
    """Vectorized version over all 2^m colorings at once."""
    x = np.arange(1 << m, dtype=np.uint32)
    ok = np.zeros(x.shape, dtype=bool)
    for i in range(m):
        a = (x >> np.uint32(i)) & 1
        b2 = (x >> np.uint32((i + 2) % m)) & 1
        b3 = (x >> np.uint32((i + 3) % m)) & 1
        ok |= (a == 0) & (b2 == 0)
        ok |= (a == 1) & (b3 == 1)
    return int((~ok).sum())


@dataclass(frozen=True)
class ColoringReport:
    m_max: int
    colorings_checked: int
    counterexamples: int
    ok: bool


def verify_cyclic_two_coloring(m_max: int) -> ColoringReport:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    total = 0
    bad = 0
    for m in range(2, m_max + 1):
        total += 1 << m
        bad += cyclic_two_coloring_violations_bitmask(m)
    return ColoringReport(m_max, total, bad, bad == 0)


# ---------------------------------------------------------------------------
# Grid search over the weight simplex

@dataclass(frozen=True)
class GridMaxReport:
    value: float
    argmax: EdgeMass
    lipschitz_gap: float
    lattice_points: int
    ground_size: int
    resolution: int
    mode: str


def grid_maximize(
    objective: Objective,
    ground_size: int,
    resolution: int,
    mode: str = "float",
    budget: int = 2_000_000,
) -> GridMaxReport:
    """Exhaustive lattice evaluation over the pair-weight simplex.

    The true maximum at this ground size is within `lipschitz_gap` of the
    grid maximum: every simplex point is within L1-distance 2(D-1)/resolution
    of the lattice and the gradient sup-norm over the simplex is bounded by
    the objective's certified constant.
    """
    if ground_size < max(objective.min_ground, 2):
        raise ValueError("ground size below the objective's minimum")
    dim = ground_size * (ground_size - 1) // 2
    n_points = math.comb(resolution + dim - 1, dim - 1)
    if n_points > budget:
        raise ValueError(f"{n_points} lattice points exceed the budget {budget}")
    gap = objective.gradient_sup_bound() * 2.0 * (dim - 1) / resolution

    best_val = -math.inf
    best_point: Optional[tuple[int, ...]] = None
    if mode == "rational":
        pairs = pair_list(ground_size)
        for t in simplex_lattice(dim, resolution):
            weights = {
                pairs[i]: Fraction(t[i], resolution) for i in range(dim) if t[i]
            }
            val = float(objective.reference_value(EdgeMass(ground_size, weights)))
            if val > best_val:
                best_val, best_point = val, t
    else:
        chunk: list[tuple[int, ...]] = []

        def flush():
            nonlocal best_val, best_point
            if not chunk:
                return
            w = np.array(chunk, dtype=float) / resolution
            vals = objective.value_many(ground_size, w)
            i = int(np.argmax(vals))
            if float(vals[i]) > best_val:
                best_val = float(vals[i])
                best_point = chunk[i]
            chunk.clear()

        for t in simplex_lattice(dim, resolution):
            chunk.append(t)
            if len(chunk) >= 20_000:
                flush()
        flush()
    assert best_point is not None
    w = np.array(best_point, dtype=float) / resolution
    return GridMaxReport(
        value=best_val,
        argmax=vector_to_mass(ground_size, w),
        lipschitz_gap=gap,
        lattice_points=n_points,
        ground_size=ground_size,
        resolution=resolution,
        mode=mode,
    )


# ---------------------------------------------------------------------------
# Exhaustive extremal search over all graphs on n <= 7 vertices

@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism, by orderly extension."""
    if n < 0 or n > 7:
        raise ValueError("graph enumeration is limited to 0 <= n <= 7")
    if n == 0:
        return (Graph(0, frozenset()),)
    smaller = enumerate_graphs(n - 1)
    seen: set[bytes] = set()
    out: list[Graph] = []
    for g in smaller:
        for mask in range(1 << (n - 1)):
            edges = set(g.edges)
            for v in range(n - 1):
                if (mask >> v) & 1:
                    edges.add((v, n - 1))
            cand = Graph(n, frozenset(edges))
            key = canonical_key(cand)
            if key not in seen:
                seen.add(key)
                out.append(cand)
    out.sort(key=lambda g: (g.edge_count, canonical_key(g)))
    return tuple(out)


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    max_count: int
    argmax: Graph
    graphs_in_class: int
    graph_class: str


def exhaustive_extremal(
    n: int,
    pattern: Graph,
    graph_class: str = "planar",
    c=2,
) -> ExtremalReport:
    """Maximum copy count of `pattern` over all n-vertex graphs in the class.

    graph_class 'planar' uses the excluded-minor oracle; 'sparse' means no
    K_{3,3} subgraph and subgraph densities at most c.
    """
    if n > 7:
        raise ValueError("exhaustive search is limited to n <= 7")
    if graph_class not in ("planar", "sparse"):
        raise ValueError("graph_class must be 'planar' or 'sparse'")
    best: Optional[tuple[int, Graph]] = None
    considered = 0
    for g in enumerate_graphs(n):
        if graph_class == "planar":
            if not is_planar(g):
                continue
        elif not sparse_k33_free(g, c).member:
            continue
        considered += 1
        cnt = count_copies(g, pattern)
        if best is None or cnt > best[0]:
            best = (cnt, g)
    if best is None:
        raise ValueError("no graphs in the class at this size")
    return ExtremalReport(n, best[0], best[1], considered, graph_class)
