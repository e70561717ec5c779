"""Probability masses on vertex pairs and their path / blow-up functionals.

Two numeric backends share one code path: float weights for optimization,
exact Fractions for certification. Arithmetic follows the weight type.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .counting import enumerate_copies
from .graphs import Edge, Graph, normalize_edge

#: Float weights at or below this are treated as zero when classifying support.
SUPPORT_EPS = 1e-15

#: Tolerance for the unit-total invariant in float mode.
TOTAL_TOL = 1e-12


@dataclass(frozen=True)
class EdgeMass:
    """Probability mass on unordered vertex pairs of {0, ..., ground_size-1}.

    Weights are nonnegative and sum to one (exactly in rational mode, within
    1e-12 in float mode). Pairs absent from the mapping carry weight zero.
    """

    ground_size: int
    weights: Mapping[Edge, float | Fraction]

    def __post_init__(self) -> None:
        if self.ground_size < 2:
            raise ValueError("ground set needs at least two vertices")
        total = 0
        rational = None
        for (u, v), w in self.weights.items():
            if not (0 <= u < v < self.ground_size):
                raise ValueError(f"pair ({u}, {v}) outside ground set")
            is_frac = isinstance(w, (Fraction, int))
            if rational is None:
                rational = is_frac
            elif rational != is_frac:
                raise ValueError("mixed rational and float weights")
            if w < 0:
                raise ValueError(f"negative weight on ({u}, {v})")
            total += w
        if rational is None:
            raise ValueError("mass needs at least one weighted pair")
        if rational:
            if total != 1:
                raise ValueError(f"weights sum to {total}, expected 1")
        elif abs(total - 1) > TOTAL_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "_rational", bool(rational))

    @property
    def is_rational(self) -> bool:
        return self._rational  # type: ignore[attr-defined]

    def mu(self, u: int, v: int) -> float | Fraction:
        e = normalize_edge(u, v)
        if not (0 <= e[0] and e[1] < self.ground_size):
            raise ValueError(f"pair {e} outside ground set")
        return self.weights.get(e, Fraction(0) if self.is_rational else 0.0)

    def vertex_mass(self, x: int) -> float | Fraction:
        """Total weight of pairs containing x."""
        if not (0 <= x < self.ground_size):
            raise ValueError(f"vertex {x} outside ground set")
        zero = Fraction(0) if self.is_rational else 0.0
        return sum((w for (u, v), w in self.weights.items() if x in (u, v)), zero)

    def support_edges(self) -> tuple[Edge, ...]:
        if self.is_rational:
            return tuple(sorted(e for e, w in self.weights.items() if w > 0))
        return tuple(sorted(e for e, w in self.weights.items() if w > SUPPORT_EPS))

    def support_graph(self) -> Graph:
        return Graph(self.ground_size, frozenset(self.support_edges()))

    def as_floats(self) -> "EdgeMass":
        if not self.is_rational:
            return self
        total = float(sum(self.weights.values()))
        return EdgeMass(
            self.ground_size,
            {e: float(w) / total for e, w in self.weights.items() if w > 0},
        )


def vertex_mass(mass: EdgeMass, x: int) -> float | Fraction:
    return mass.vertex_mass(x)


def support_graph(mass: EdgeMass) -> Graph:
    return mass.support_graph()


def uniform_edge_mass(g: Graph, rational: bool = True) -> EdgeMass:
    """Uniform mass on the edges of g, on ground set V(g)."""
    m = g.edge_count
    if m == 0:
        raise ValueError("graph has no edges to carry mass")
    w = Fraction(1, m) if rational else 1.0 / m
    return EdgeMass(g.n, {e: w for e in g.sorted_edges})


def single_pair_mass(ground_size: int, pair: tuple[int, int], rational: bool = True) -> EdgeMass:
    e = normalize_edge(*pair)
    return EdgeMass(ground_size, {e: Fraction(1) if rational else 1.0})


# ---------------------------------------------------------------------------
# Functionals

def path_functional(mass: EdgeMass, m: int) -> float | Fraction:
    """Sum over ordered m-tuples of distinct vertices forming a supported path
    of  vmass(x1) * prod of consecutive pair weights * vmass(xm).
    """
    if m < 2:
        raise ValueError("path length parameter must be at least 2")
    if mass.ground_size < m:
        raise ValueError("ground set smaller than the path order")
    n = mass.ground_size
    vm = [mass.vertex_mass(x) for x in range(n)]
    sg = mass.support_graph()
    adj = [sorted(s) for s in sg.adjacency]
    zero = Fraction(0) if mass.is_rational else 0.0
    total = zero
    on_path = [False] * n
    path: list[int] = []

    def extend(v, weight):
        nonlocal total
        path.append(v)
        on_path[v] = True
        if len(path) == m:
            total += vm[path[0]] * weight * vm[v]
        else:
            for w in adj[v]:
                if not on_path[w]:
                    extend(w, weight * mass.mu(v, w))
        on_path[v] = False
        path.pop()

    one = Fraction(1) if mass.is_rational else 1.0
    for start in range(n):
        extend(start, one)
    return total


def graph_weight(mass: EdgeMass, gp: Graph) -> float | Fraction:
    """Product of the mass weights over the edges of gp."""
    if gp.n > mass.ground_size:
        raise ValueError("graph exceeds the ground set")
    result = Fraction(1) if mass.is_rational else 1.0
    for u, v in gp.edges:
        result *= mass.mu(u, v)
    return result


def blowup_functional(mass: EdgeMass, h: Graph, k: int) -> float | Fraction:
    """Sum of (product of edge weights)^k over copies of h supported by the mass."""
    if h.has_isolated_vertices():
        raise ValueError("pattern must have no isolated vertices")
    if k < 1:
        raise ValueError("k must be a positive integer")
    total = Fraction(0) if mass.is_rational else 0.0
    for copy in enumerate_copies(mass.support_graph(), h).copies:
        prod = Fraction(1) if mass.is_rational else 1.0
        for u, v in copy:
            prod *= mass.mu(u, v)
        total += prod ** k
    return total


# ---------------------------------------------------------------------------
# Analytic gradients, with respect to every pair of the ground set

def all_pairs(ground_size: int) -> list[Edge]:
    return list(combinations(range(ground_size), 2))


def path_functional_gradient(mass: EdgeMass, m: int) -> dict[Edge, float | Fraction]:
    """Exact partial derivatives of the path functional at the given mass.

    Tuples with two or more zero-weight consecutive pairs contribute to no
    partial; tuples with exactly one contribute only to that pair's entry.
    """
    if m < 2:
        raise ValueError("path length parameter must be at least 2")
    n = mass.ground_size
    if n < m:
        raise ValueError("ground set smaller than the path order")
    rational = mass.is_rational
    zero = Fraction(0) if rational else 0.0
    one = Fraction(1) if rational else 1.0
    vm = [mass.vertex_mass(x) for x in range(n)]
    grad: dict[Edge, float | Fraction] = {e: zero for e in all_pairs(n)}
    on_path = [False] * n
    path: list[int] = []
    slot_weights: list = []

    def finish() -> None:
        x1, xm = path[0], path[-1]
        zero_slots = [i for i, w in enumerate(slot_weights) if w == 0]
        if len(zero_slots) >= 2:
            return
        if len(zero_slots) == 1:
            i0 = zero_slots[0]
            prod = one
            for i, w in enumerate(slot_weights):
                if i != i0:
                    prod *= w
            e0 = normalize_edge(path[i0], path[i0 + 1])
            grad[e0] += vm[x1] * prod * vm[xm]
            return
        # all slots positive: endpoint terms plus leave-one-out slot terms
        full = one
        for w in slot_weights:
            full *= w
        for y in range(n):
            if y != x1:
                grad[normalize_edge(x1, y)] += full * vm[xm]
            if y != xm:
                grad[normalize_edge(xm, y)] += vm[x1] * full
        prefix = [one]
        for w in slot_weights:
            prefix.append(prefix[-1] * w)
        suffix = [one]
        for w in reversed(slot_weights):
            suffix.append(suffix[-1] * w)
        suffix.reverse()
        for i in range(m - 1):
            loo = prefix[i] * suffix[i + 1]
            grad[normalize_edge(path[i], path[i + 1])] += vm[x1] * loo * vm[xm]

    def extend(v: int) -> None:
        path.append(v)
        on_path[v] = True
        if len(path) == m:
            finish()
        else:
            zeros = sum(1 for w in slot_weights if w == 0)
            for w in range(n):
                if on_path[w]:
                    continue
                mu = mass.mu(v, w)
                if mu == 0 and zeros >= 1:
                    continue
                slot_weights.append(mu)
                extend(w)
                slot_weights.pop()
        on_path[v] = False
        path.pop()

    for start in range(n):
        extend(start)
    return grad


def blowup_functional_gradient(mass: EdgeMass, h: Graph, k: int) -> dict[Edge, float | Fraction]:
    """Exact partial derivatives of the blow-up functional at the given mass."""
    if h.has_isolated_vertices():
        raise ValueError("pattern must have no isolated vertices")
    if k < 1:
        raise ValueError("k must be a positive integer")
    n = mass.ground_size
    rational = mass.is_rational
    zero = Fraction(0) if rational else 0.0
    one = Fraction(1) if rational else 1.0
    support = set(mass.support_edges())
    grad: dict[Edge, float | Fraction] = {}
    for e in all_pairs(n):
        host = Graph(n, frozenset(support | {e}))
        acc = zero
        w_e = mass.mu(*e)
        for copy in enumerate_copies(host, h).copies:
            if e not in copy:
                continue
            rest = one
            for s in copy:
                if s != e:
                    rest *= mass.mu(*s) ** k
            acc += rest
        grad[e] = k * w_e ** (k - 1) * acc if k > 1 else acc
    return grad


# ---------------------------------------------------------------------------
# Serialization: {"ground": int, "weights": [[u, v, w], ...]}

def mass_to_json_dict(mass: EdgeMass) -> dict:
    rows = []
    for (u, v), w in sorted(mass.weights.items()):
        if mass.is_rational:
            rows.append([u, v, str(Fraction(w))])
        else:
            rows.append([u, v, float(w)])
    return {"ground": mass.ground_size, "weights": rows}


def mass_from_json_dict(d: Mapping) -> EdgeMass:
    weights: dict[Edge, float | Fraction] = {}
    for u, v, w in d["weights"]:
        value = Fraction(w) if isinstance(w, str) else float(w)
        weights[normalize_edge(int(u), int(v))] = value
    return EdgeMass(int(d["ground"]), weights)


def mass_to_json(mass: EdgeMass) -> str:
    return json.dumps(mass_to_json_dict(mass), sort_keys=True)


def mass_from_json(s: str) -> EdgeMass:
    return mass_from_json_dict(json.loads(s))
