"""Lower-bound blow-up constructions, leading-term upper bounds, and tables.

Budget accounting: `n` is the total vertex budget of the built graph.
Uniform mode uses the exact floor rule l = floor((n - |V(base)|) / |E(base)|);
mass mode rounds each part to floor(n * mu(e)) and reports the actual vertex
count rather than truncating.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .classes import sparse_k33_free
from .counting import count_copies, count_cycle_copies, count_path_copies, enumerate_copies
from .graphs import (
    Edge,
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_blowup,
    edge_blowup_map,
    is_complete,
    is_cycle,
    is_path,
    path_graph,
)
from .mass import EdgeMass


@dataclass(frozen=True)
class ConstructionSpec:
    """Recipe for a lower-bound graph: a base plus per-edge blow-up sizes."""

    base: Graph
    part_sizes: Mapping[Edge, int]
    n: int

    @classmethod
    def uniform(cls, base: Graph, n: int) -> "ConstructionSpec":
        if base.edge_count == 0:
            raise ValueError("base graph needs edges")
        if n < base.n:
            raise ValueError(f"budget {n} below the base's {base.n} vertices")
        size = (n - base.n) // base.edge_count
        return cls(base, {e: size for e in base.sorted_edges}, n)

    @classmethod
    def from_mass(cls, mass: EdgeMass, n: int) -> "ConstructionSpec":
        base = mass.support_graph()
        sizes = {e: math.floor(n * mass.mu(*e)) for e in base.sorted_edges}
        return cls(base, sizes, n)

    def built_vertex_count(self) -> int:
        return self.base.n + sum(self.part_sizes.values())


def build_lower_bound_graph(spec: ConstructionSpec) -> Graph:
    """Blow up the base; the result always lies in the C = 2 host class."""
    g = edge_blowup_map(spec.base, dict(spec.part_sizes))
    membership = sparse_k33_free(g, 2)
    if not membership.member:
        raise AssertionError("blow-up left the C=2 host class; this is a bug")
    return g


# ---------------------------------------------------------------------------
# Targets

@dataclass(frozen=True)
class Target:
    label: str
    kind: str  # "path" | "cycle" | "biclique" | "blowup"
    pattern: Graph
    base: Graph
    k: int


def path_target(order: int) -> Target:
    if order < 5 or order % 2 == 0:
        raise ValueError("supported paths have odd order at least 5")
    m = (order - 1) // 2
    base = complete_graph(2) if m == 2 else cycle_graph(m)
    return Target(f"P{order}", "path", path_graph(order), base, 1)


def cycle_target(order: int) -> Target:
    if order < 4 or order % 2 == 1:
        raise ValueError("supported cycles have even order at least 4")
    m = order // 2
    if m == 2:
        return Target("C4", "cycle", cycle_graph(4), complete_graph(2), 2)
    return Target(f"C{order}", "cycle", cycle_graph(order), cycle_graph(m), 1)


def biclique_target(k: int) -> Target:
    if k < 1:
        raise ValueError("k must be positive")
    return Target(f"K2,{k}", "biclique", complete_bipartite(2, k), complete_graph(2), k)


def blowup_target(base: Graph, k: int, label: Optional[str] = None) -> Target:
    if k < 1:
        raise ValueError("k must be positive")
    if base.has_isolated_vertices() or base.edge_count == 0:
        raise ValueError("base must have edges and no isolated vertices")
    return Target(label or f"blowup({base.n}v{base.edge_count}e,{k})",
                  "blowup", edge_blowup(base, k), base, k)


_TARGET_RE = re.compile(r"^(?:blowup|B)\(\s*([A-Za-z0-9,]+)\s*,\s*(\d+)\s*\)$")


def parse_target(text: str) -> Target:
    """Parse targets like P7, C6, K2,9, blowup(K3,2)."""
    s = text.strip()
    m = re.fullmatch(r"P(\d+)", s)
    if m:
        return path_target(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", s)
    if m:
        return cycle_target(int(m.group(1)))
    m = re.fullmatch(r"K2,(\d+)", s)
    if m:
        return biclique_target(int(m.group(1)))
    m = _TARGET_RE.fullmatch(s)
    if m:
        name, k = m.group(1), int(m.group(2))
        base = _named_base(name)
        return blowup_target(base, k, label=f"blowup({name},{k})")
    raise ValueError(f"unsupported target {text!r}")


def _named_base(name: str) -> Graph:
    m = re.fullmatch(r"K(\d+)", name)
    if m:
        return complete_graph(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return cycle_graph(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", name)
    if m:
        return path_graph(int(m.group(1)))
    raise ValueError(f"unknown base graph {name!r}")


# ---------------------------------------------------------------------------
# Leading-term upper bounds

def upper_bound_value(target: Target, n: int) -> Fraction:
    """Leading term of the extremal count over the host class, exactly.

    Only leading terms are reported; the lower-order error terms carry
    unspecified constants and are intentionally not invented here.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if target.kind == "path":
        order = target.pattern.n
        m = (order - 1) // 2
        if order == 5:
            return Fraction(n) ** 3
        if order == 7:
            return Fraction(4, 27) * n ** 4
        return Fraction(n ** (m + 1), 2 * math.factorial(m - 1))
    if target.kind == "cycle":
        order = target.pattern.n
        m = order // 2
        if order == 4:
            return Fraction(n ** 2, 2)
        if order == 6:
            return Fraction(n, 3) ** 3
        if order == 8:
            return Fraction(n, 4) ** 4
        return Fraction(n ** m, math.factorial(m))
    if target.kind == "biclique":
        k = target.k
        if k == 2:
            return Fraction(n ** 2, 2)
        if k < 9:
            raise ValueError("biclique bound needs k = 2 or k >= 9")
        return Fraction(n ** k, math.factorial(k))
    # blow-up targets
    base, k = target.base, target.k
    m = base.edge_count
    if is_complete(base) and base.n == 3:
        return Fraction(1, math.factorial(k) ** 3) * Fraction(n, 3) ** (3 * k)
    if is_complete(base) and base.n == 4:
        return Fraction(1, math.factorial(k) ** 6) * Fraction(n, 6) ** (6 * k)
    delta = base.min_degree()
    if k * (delta - 1) >= 2 or (delta == 1 and k >= 9):
        return Fraction(n ** (k * m), math.factorial(k * m))
    raise ValueError(
        "no certified leading term for this blow-up: needs k*(min_degree-1) >= 2 "
        "or min_degree = 1 with k >= 9"
    )


# ---------------------------------------------------------------------------
# Exact lower-bound counts in the constructions

def default_construction(target: Target, n: int) -> ConstructionSpec:
    return ConstructionSpec.uniform(target.base, n)


@dataclass(frozen=True)
class LowerCount:
    count: int
    closed_form: Optional[int]
    built_vertices: int


def _closed_form_count(spec: ConstructionSpec, target: Target) -> Optional[int]:
    """Copies that respect the blow-up structure: choose k of each part.

    Sums prod-over-edges C(part, k) across the copies of the target's base
    inside the construction base. Exact for the blow-up style targets used
    here, where pattern hubs can only land on base vertices.
    """
    if target.kind == "path":
        return None
    k = target.k
    total = 0
    for copy in enumerate_copies(spec.base, target.base).copies:
        prod = 1
        for e in copy:
            prod *= math.comb(spec.part_sizes.get(e, 0), k)
        total += prod
    return total


def lower_bound_count(spec: ConstructionSpec, target: Target) -> LowerCount:
    """Exact number of target copies in the built construction."""
    g = build_lower_bound_graph(spec)
    pat = target.pattern
    if is_path(pat):
        count = count_path_copies(g, pat.n)
    elif is_cycle(pat):
        count = count_cycle_copies(g, pat.n)
    else:
        count = count_copies(g, pat)
    return LowerCount(count, _closed_form_count(spec, target), g.n)


def triangle_blowup_p7_count(a: int, b: int, c: int) -> int:
    """Seven-vertex path count in a triangle blow-up with part sizes a, b, c.

    Independent structural counter: any such path alternates between part
    vertices (odd positions) and the three base vertices (even positions).
    For base order (v1, v2, v3) with part sizes s12, s23, s13, the interior
    choices are the s12 * s23 pairs, and the two endpoint part vertices are
    counted by cases on whether the first endpoint shares the v1-v2 part.
    """
    for s in (a, b, c):
        if s < 0:
            raise ValueError("part sizes must be nonnegative")
    total = 0
    sizes = {frozenset({0, 1}): a, frozenset({1, 2}): b, frozenset({0, 2}): c}
    for v1, v2, v3 in itertools.permutations(range(3)):
        s12 = sizes[frozenset({v1, v2})]
        s23 = sizes[frozenset({v2, v3})]
        s13 = sizes[frozenset({v1, v3})]
        if s12 == 0 or s23 == 0:
            continue
        ends = (s12 - 1) * (s13 + s23 - 1) + s13 * (s13 + s23 - 2)
        total += s12 * s23 * ends
    return total // 2


def triangle_blowup_c6_count(a: int, b: int, c: int) -> int:
    """Six-cycle count in a triangle blow-up: one part vertex per base edge."""
    for s in (a, b, c):
        if s < 0:
            raise ValueError("part sizes must be nonnegative")
    return a * b * c


# ---------------------------------------------------------------------------
# Bound tables

@dataclass(frozen=True)
class BoundRow:
    target: str
    n: int
    lower: int
    upper: Fraction
    ratio: float
    built_vertices: int


@dataclass(frozen=True)
class BoundTable:
    rows: tuple[BoundRow, ...]

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "target": r.target,
                    "n": r.n,
                    "lower": r.lower,
                    "upper": str(r.upper),
                    "upper_float": float(r.upper),
                    "ratio": r.ratio,
                    "built_vertices": r.built_vertices,
                }
                for r in self.rows
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_text(self) -> str:
        if not self.rows:
            return "(empty table)"
        header = ("target", "n", "lower", "upper", "ratio")
        data = [
            (r.target, str(r.n), str(r.lower), f"{float(r.upper):.6g}", f"{r.ratio:.4f}")
            for r in self.rows
        ]
        widths = [max(len(h), *(len(d[i]) for d in data)) for i, h in enumerate(header)]
        lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
        for d in data:
            lines.append("  ".join(d[i].ljust(widths[i]) for i in range(len(header))))
        return "\n".join(lines)


def bound_table(targets: list[Target], n_values: list[int]) -> BoundTable:
    rows = []
    for target in targets:
        for n in n_values:
            spec = default_construction(target, n)
            lower = lower_bound_count(spec, target)
            upper = upper_bound_value(target, n)
            ratio = float(Fraction(lower.count) / upper) if upper > 0 else 0.0
            rows.append(
                BoundRow(target.label, n, lower.count, upper, ratio, lower.built_vertices)
            )
    return BoundTable(tuple(rows))
