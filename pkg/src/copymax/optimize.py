"""Simplex maximization of the mass functionals, with stationarity checks.

The ascent is multiplicative: a short exponentiated-gradient exploration
phase, then a polish phase using the growth transform w <- w * g / <w, g>,
which increases any homogeneous polynomial with nonnegative coefficients and
therefore never overshoots. Restarts cover the non-concave landscape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import mass as massmod
from .counting import count_copies, edge_orbits, is_edge_transitive
from .graphs import Edge, Graph, is_complete, is_cycle
from .mass import SUPPORT_EPS, EdgeMass, uniform_edge_mass
from .objectives import (
    BlowupObjective,
    Objective,
    PathObjective,
    mass_to_vector,
    pair_list,
    vector_to_mass,
)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_iterations: int = 200_000
    tolerance: float = 1e-10
    explore_steps: int = 150
    step_scale: float = 1.0
    sizes: Optional[tuple[int, ...]] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.sizes is not None and len(self.sizes) == 0:
            raise ValueError("ground-size range must be nonempty")


@dataclass(frozen=True)
class OptResult:
    best_mass: EdgeMass
    value: float
    kkt_residual: float
    stationarity: float
    ground_sizes_swept: tuple[int, ...]
    restarts: int
    converged: bool
    size_values: tuple[tuple[int, float], ...]
    heuristic_sweep: bool
    notes: tuple[str, ...] = field(default=())
    objective_label: str = ""


def largek_threshold(m: int) -> float:
    """log(m+1) / (m log(1+1/m)); k at or above it pins the blow-up optimum."""
    if m < 1:
        raise ValueError("m must be positive")
    return math.log(m + 1) / (m * math.log1p(1.0 / m))


def _k_meets_threshold(m: int, k: int) -> bool:
    # k >= log(m+1)/(m log(1+1/m))  <=>  (m+1)^(km-1) >= m^(km), exactly
    return (m + 1) ** (k * m - 1) >= m ** (k * m)


@dataclass(frozen=True)
class SupportBound:
    cap: int
    strict_bound: Fraction
    degenerate_bound: Fraction
    note: str


def support_bound(h: Graph, k: int) -> SupportBound:
    """Ground-size cap for masses attaining the blow-up optimum.

    An optimal mass spans fewer than 2km/(k*delta - 1) vertices (this
    dominates 2m/delta). The returned cap is the ceiling of that strict
    bound, so it includes a one-unit safety margin when the bound is an
    integer.
    """
    delta = h.min_degree()
    m = h.edge_count
    if k * delta < 2:
        raise ValueError("support bound requires k * min_degree >= 2")
    strict = Fraction(2 * k * m, k * delta - 1)
    cap = math.ceil(strict)
    return SupportBound(
        cap=cap,
        strict_bound=strict,
        degenerate_bound=Fraction(2 * m, delta),
        note="optimal masses span strictly fewer than strict_bound vertices; "
        "cap rounds outward",
    )


def _default_sizes(objective: Objective) -> tuple[tuple[int, ...], bool]:
    if isinstance(objective, PathObjective):
        m = objective.m
        return tuple(range(m, m + 4)), True
    h, k = objective.h, objective.k
    if k * h.min_degree() >= 2:
        cap = support_bound(h, k).cap
        return tuple(range(h.n, cap + 1)), False
    return tuple(range(h.n, h.n + 4)), True


def _degenerate_notes(objective: Objective) -> tuple[str, ...]:
    if not isinstance(objective, BlowupObjective) or objective.k != 1:
        return ()
    h = objective.h
    degs = sorted(h.degree(v) for v in range(h.n))
    m = h.edge_count
    if m >= 2 and degs == [1] * m + [m]:
        return ("supremum not achieved at any finite ground size; "
                "the sweep approaches it from below",)
    if m >= 2 and h.n == 2 * m and degs == [1] * (2 * m):
        return ("supremum not achieved at any finite ground size; "
                "the sweep approaches it from below",)
    return ()


def _residual(w: np.ndarray, g: np.ndarray) -> tuple[float, float]:
    lam = float(np.dot(w, g))
    on = w > SUPPORT_EPS
    res = 0.0
    if on.any():
        res = float(np.abs(g[on] - lam).max())
    off = ~on
    if off.any():
        res = max(res, float(np.maximum(g[off] - lam, 0.0).max()))
    return res, lam


def _ascend(objective: Objective, s: int, w0: np.ndarray, cfg: OptimizerConfig):
    w = w0.copy()
    total = w.sum()
    if total <= 0:
        raise ValueError("start point must have positive total mass")
    w /= total
    lip = 0.0
    # exploration: exponentiated gradient with a decaying step
    for t in range(1, cfg.explore_steps + 1):
        val, g = objective.value_grad(s, w)
        gmax = float(g.max(initial=0.0))
        lip = max(lip, gmax, 1e-30)
        eta = cfg.step_scale / (lip * math.sqrt(t))
        w = w * np.exp(eta * (g - gmax))
        total = w.sum()
        if total <= 0:
            w = w0.copy() / w0.sum()
            break
        w /= total
    # polish: growth transform, monotone for these objectives
    best_val = -1.0
    stall = 0
    val, g = objective.value_grad(s, w)
    res, lam = _residual(w, g)
    for _ in range(max(cfg.max_iterations - cfg.explore_steps, 1)):
        if res < cfg.tolerance:
            return w, val, res, lam, True
        if lam <= 0.0:  # objective identically zero on this face
            return w, val, res, lam, False
        w = w * (g / lam)
        w /= w.sum()
        val, g = objective.value_grad(s, w)
        res, lam = _residual(w, g)
        if val > best_val * (1.0 + 1e-15):
            best_val = val
            stall = 0
        else:
            stall += 1
            if stall > 200:
                return w, val, res, lam, res < cfg.tolerance
    return w, val, res, lam, res < cfg.tolerance


def maximize(objective: Objective, config: OptimizerConfig | None = None) -> OptResult:
    """Best mass over the swept ground sizes; deterministic under a fixed seed.

    Starts per size: the uniform mass on the natural seed structure plus
    `restarts` Dirichlet(1) samples. Ties between ground sizes within 1e-12
    go to the smaller size.
    """
    cfg = config or OptimizerConfig()
    if cfg.sizes is not None:
        sizes = tuple(cfg.sizes)
        heuristic = isinstance(objective, PathObjective) or (
            isinstance(objective, BlowupObjective)
            and objective.k * objective.h.min_degree() < 2
        )
    else:
        sizes, heuristic = _default_sizes(objective)

    best: Optional[tuple[float, int, np.ndarray, float, float, bool]] = None
    size_values: list[tuple[int, float]] = []
    notes = list(_degenerate_notes(objective))

    for s in sizes:
        if s < max(objective.min_ground, 2):
            notes.append(f"skipped ground size {s}: below the objective's minimum")
            continue
        dim = s * (s - 1) // 2
        starts = objective.seed_masses(s)
        for r in range(cfg.restarts):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=cfg.seed, spawn_key=(s, r))
            )
            starts.append(rng.dirichlet(np.ones(dim)))
        size_best: Optional[tuple[float, np.ndarray, float, float, bool]] = None
        for w0 in starts:
            w, val, res, lam, conv = _ascend(objective, s, w0, cfg)
            if size_best is None or val > size_best[0]:
                size_best = (val, w, res, lam, conv)
        assert size_best is not None
        val, w, res, lam, conv = size_best
        size_values.append((s, val))
        if best is None or val > best[0] + 1e-12:
            best = (val, s, w, res, lam, conv)

    if best is None:
        raise ValueError("no feasible ground size in the sweep")
    val, s, w, res, lam, conv = best
    return OptResult(
        best_mass=vector_to_mass(s, w),
        value=val,
        kkt_residual=res,
        stationarity=lam,
        ground_sizes_swept=sizes,
        restarts=cfg.restarts,
        converged=conv,
        size_values=tuple(size_values),
        heuristic_sweep=heuristic,
        notes=tuple(notes),
        objective_label=objective.label(),
    )


# ---------------------------------------------------------------------------
# Certification of candidate optima

@dataclass(frozen=True)
class KKTReport:
    residual: float
    stationarity: float
    exact_residual: Optional[Fraction] = None


def kkt_residual(mass: EdgeMass, objective: Objective) -> KKTReport:
    """First-order simplex stationarity residual at the given mass.

    With multiplier estimate lam = sum_e mu(e) g(e): supported pairs
    contribute |g - lam|, unsupported pairs contribute max(0, g - lam).
    Zero exactly at KKT points.
    """
    if mass.is_rational:
        grad = objective.reference_gradient(mass)
        lam = sum(mass.mu(*e) * g for e, g in grad.items())
        res = Fraction(0)
        for e, g in grad.items():
            if mass.mu(*e) > 0:
                res = max(res, abs(g - lam))
            else:
                res = max(res, max(Fraction(0), g - lam))
        return KKTReport(float(res), float(lam), exact_residual=res)
    s = mass.ground_size
    w = mass_to_vector(mass)
    _, g = objective.value_grad(s, w)
    res, lam = _residual(w, g)
    return KKTReport(res, lam)


@dataclass(frozen=True)
class RegularityReport:
    max_edge_violation: float
    max_vertex_violation: float
    ok: bool
    tolerance: float


def check_regularity(mass: EdgeMass, h: Graph, k: int, tolerance: float = 1e-6) -> RegularityReport:
    """Stationarity identities an optimal mass must satisfy.

    For each pair e:  mu(e) * m * value = sum over supported copies through e
    of mu(copy)^k; for each vertex x the degree-weighted analogue. Reports
    the worst absolute violation of each family.
    """
    from .counting import enumerate_copies

    m = h.edge_count
    value = massmod.blowup_functional(mass, h, k)
    copies = enumerate_copies(mass.support_graph(), h).copies
    zero = Fraction(0) if mass.is_rational else 0.0
    edge_sum: dict[Edge, object] = {}
    vertex_sum: dict[int, object] = {}
    for copy in copies:
        prod = Fraction(1) if mass.is_rational else 1.0
        for e in copy:
            prod *= mass.mu(*e)
        term = prod ** k
        for e in copy:
            edge_sum[e] = edge_sum.get(e, zero) + term
            for x in e:
                vertex_sum[x] = vertex_sum.get(x, zero) + term
    worst_edge = zero
    for e in combinations(range(mass.ground_size), 2):
        lhs = mass.mu(*e) * m * value
        rhs = edge_sum.get(e, zero)
        worst_edge = max(worst_edge, abs(lhs - rhs))
    worst_vertex = zero
    for x in range(mass.ground_size):
        lhs = mass.vertex_mass(x) * m * value
        rhs = vertex_sum.get(x, zero)
        worst_vertex = max(worst_vertex, abs(lhs - rhs))
    ok = worst_edge <= tolerance and worst_vertex <= tolerance
    return RegularityReport(float(worst_edge), float(worst_vertex), ok, tolerance)


@dataclass(frozen=True)
class MassBoundReport:
    max_edge_violation: float
    max_vertex_violation: float
    ok: bool
    tolerance: float


def check_mass_bounds(mass: EdgeMass, h: Graph, k: int, tolerance: float = 1e-9) -> MassBoundReport:
    """Lower bounds every supported weight of an optimal mass must meet:
    1 - m*mu(e) <= (1-mu(e))^(km) and 1 - (m/delta)*vm(x) <= (1-vm(x))^(km).
    """
    m = h.edge_count
    delta = h.min_degree()
    if delta < 1:
        raise ValueError("pattern must have no isolated vertices")
    km = k * m
    zero = Fraction(0) if mass.is_rational else 0.0
    worst_edge = zero
    for e in mass.support_edges():
        w = mass.mu(*e)
        gap = (1 - m * w) - (1 - w) ** km
        worst_edge = max(worst_edge, gap)
    worst_vertex = zero
    support_vertices = {x for e in mass.support_edges() for x in e}
    for x in support_vertices:
        vm = mass.vertex_mass(x)
        gap = (1 - Fraction(m, delta) * vm if mass.is_rational else 1 - (m / delta) * vm)
        gap -= (1 - vm) ** km
        worst_vertex = max(worst_vertex, gap)
    ok = worst_edge <= tolerance and worst_vertex <= tolerance
    return MassBoundReport(float(worst_edge), float(worst_vertex), ok, tolerance)


# ---------------------------------------------------------------------------
# Closed forms and certified brackets

@dataclass(frozen=True)
class CertifiedOptimum:
    exact: Optional[Fraction]
    lower: Fraction
    upper: Fraction
    achieved: Optional[bool]
    note: str

    def is_exact(self) -> bool:
        return self.exact is not None


def _is_star(h: Graph) -> bool:
    m = h.edge_count
    return m >= 2 and sorted(h.degree(v) for v in range(h.n)) == [1] * m + [m]


def _is_matching(h: Graph) -> bool:
    m = h.edge_count
    return m >= 2 and h.n == 2 * m and all(h.degree(v) == 1 for v in range(h.n))


def _edge_transitive_completion_lower(h: Graph, k: int) -> Optional[Fraction]:
    """Lower bound from embedding h as an edge-deleted edge-transitive graph."""
    m = h.edge_count
    if _k_meets_threshold(m, k):
        return None
    for u, v in combinations(range(h.n), 2):
        if h.has_edge(u, v):
            continue
        h_plus = h.add_edge(u, v)
        if is_edge_transitive(h_plus):
            return (m + 1) * Fraction(1, (m + 1) ** (k * m))
    return None


def certified_optimum(objective: Objective) -> CertifiedOptimum:
    """Exact supremum when a proof pins it down, otherwise certified brackets.

    Exact cases: the path functional at m in {2, 3}; blow-ups of a single
    edge, of complete graphs, of the 4-cycle; and any pattern once k clears
    the large-multiplicity threshold. The star and matching families at
    k = 1 have a known supremum that no finite mass attains.
    """
    if isinstance(objective, PathObjective):
        m = objective.m
        if m == 2:
            return CertifiedOptimum(Fraction(2), Fraction(2), Fraction(2), True,
                                    "attained by a single-pair mass")
        if m == 3:
            v = Fraction(8, 27)
            return CertifiedOptimum(v, v, v, True,
                                    "attained by the uniform mass on a triangle")
        lower = Fraction(8, m ** m)
        upper = Fraction(1, math.factorial(m - 1))
        return CertifiedOptimum(
            None, lower, upper, None,
            "bracket only; the uniform cycle mass gives the lower bound and "
            "is conjectured optimal, which this tool does not assert")

    h, k = objective.h, objective.k
    m = h.edge_count
    uniform_value = Fraction(1, m ** (k * m))
    envelope = objective.upper_bound_exact()
    if m == 1:
        return CertifiedOptimum(Fraction(1), Fraction(1), Fraction(1), True,
                                "attained by a single-pair mass")
    if is_complete(h) and h.n >= 3:
        return CertifiedOptimum(uniform_value, uniform_value, uniform_value, True,
                                "attained by the uniform mass on the pattern's edges")
    if is_cycle(h) and h.n == 4:
        return CertifiedOptimum(uniform_value, uniform_value, uniform_value, True,
                                "attained by the uniform mass on a 4-cycle")
    if _k_meets_threshold(m, k):
        return CertifiedOptimum(uniform_value, uniform_value, uniform_value, True,
                                "k is above the large-multiplicity threshold; "
                                "attained by the uniform mass on the pattern's edges")
    if k == 1 and (_is_star(h) or _is_matching(h)):
        sup = Fraction(1, math.factorial(m))
        return CertifiedOptimum(sup, sup, sup, False,
                                "supremum not achieved by any finite mass")
    lower = uniform_value
    note = "bracket only; lower bound from the uniform mass on the pattern's edges"
    et_lower = _edge_transitive_completion_lower(h, k)
    if et_lower is not None and et_lower > lower:
        lower = et_lower
        note = ("bracket only; lower bound from the uniform mass on an "
                "edge-transitive one-edge completion of the pattern")
    achieved = True if k * h.min_degree() >= 2 else None
    return CertifiedOptimum(None, lower, envelope, achieved, note)


@dataclass(frozen=True)
class EdgeTransitiveLowerReport:
    full_edges: int
    k: int
    copies_of_deleted: int
    value: Fraction
    ratio_to_uniform: Fraction
    mass_route_value: Fraction
    consistent: bool
    h_minus: Graph

    @property
    def value_float(self) -> float:
        return float(self.value)

    @property
    def ratio_float(self) -> float:
        return float(self.ratio_to_uniform)


def edgetrans_lower(h: Graph, k: int) -> EdgeTransitiveLowerReport:
    """Blow-up lower bound from the uniform mass on an edge-transitive graph.

    For edge-transitive h on m+1 >= 3 edges and the pattern h-minus-one-edge,
    the uniform mass on E(h) gives (m+1) * (m+1)^(-km); the report compares
    that against the plain uniform-on-pattern value m^(-km), and cross-checks
    the formula against a direct functional evaluation.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    full = h.edge_count
    if full < 3:
        raise ValueError("needs at least three edges")
    orbits = edge_orbits(h)
    if len(orbits) != 1:
        raise ValueError("graph is not edge-transitive")
    m = full - 1
    h_minus = h.remove_edge(*h.sorted_edges[0])
    if h_minus.has_isolated_vertices():
        raise ValueError("deleting an edge isolates a vertex")
    value = (m + 1) * Fraction(1, (m + 1) ** (k * m))
    ratio = value * Fraction(m ** (k * m))
    copies = count_copies(h, h_minus)
    mass_value = massmod.blowup_functional(uniform_edge_mass(h, rational=True), h_minus, k)
    return EdgeTransitiveLowerReport(
        full_edges=full,
        k=k,
        copies_of_deleted=copies,
        value=value,
        ratio_to_uniform=ratio,
        mass_route_value=mass_value,
        consistent=(mass_value == value and copies == full),
        h_minus=h_minus,
    )
