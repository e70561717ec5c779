"""Host-class membership and the counting inequalities that hold on it.

The class of interest is: no K_{3,3} subgraph, and every subgraph has at
most C times as many edges as vertices. The density condition is decided
exactly by a max-flow feasibility test on rationals rather than by
enumerating subgraphs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .counting import canonical_key, count_path_copies, enumerate_copies, automorphism_count
from .graphs import Graph, complete_graph


# ---------------------------------------------------------------------------
# K_{3,3} detection by triple scan

def find_k33(g: Graph) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Return (triple, common neighbors) witnessing a K_{3,3} subgraph, or None."""
    adj = g.adjacency
    for u, v, w in combinations(range(g.n), 3):
        common = (adj[u] & adj[v] & adj[w]) - {u, v, w}
        if len(common) >= 3:
            picks = tuple(sorted(common)[:3])
            return ((u, v, w), picks)
    return None


# ---------------------------------------------------------------------------
# Exact densest-subgraph via Dinic max-flow on Fractions

class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add(self, u: int, v: int, c: Fraction) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(Fraction(0))

    def max_flow(self, s: int, t: int) -> Fraction:
        flow = Fraction(0)
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for eid in self.head[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: Fraction) -> Fraction:
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    eid = self.head[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[eid]))
                        if got > 0:
                            self.cap[eid] -= got
                            self.cap[eid ^ 1] += got
                            return got
                    it[u] += 1
                return Fraction(0)

            while True:
                pushed = dfs(s, Fraction(10) ** 30)
                if pushed == 0:
                    break
                flow += pushed

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def _denser_subset(g: Graph, gamma: Fraction) -> Optional[frozenset[int]]:
    """A vertex set S with e(S) > gamma * |S|, or None if none exists.

    Network: source -> each edge (cap 1) -> its endpoints (cap inf),
    each vertex -> sink (cap gamma). The min cut equals
    m - max_S (e(S) - gamma |S|).
    """
    m = g.edge_count
    if m == 0:
        return None
    n = g.n
    net = _Dinic(2 + m + n)
    s, t = 0, 1
    inf = Fraction(4 * m + 1)
    for i, (u, v) in enumerate(g.sorted_edges):
        net.add(s, 2 + i, Fraction(1))
        net.add(2 + i, 2 + m + u, inf)
        net.add(2 + i, 2 + m + v, inf)
    for v in range(n):
        net.add(2 + m + v, t, gamma)
    if net.max_flow(s, t) >= m:
        return None
    side = net.source_side(s)
    subset = frozenset(v for v in range(n) if 2 + m + v in side)
    return subset


def max_subgraph_density(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Exact max of |E(H)| / |V(H)| over nonempty subgraphs H of g.

    It suffices to scan induced subgraphs; the maximizing vertex set is
    returned. Each improving flow jumps to an achieved density, so the loop
    terminates after finitely many strict improvements.
    """
    if g.n == 0:
        raise ValueError("empty graph has no subgraph density")
    if g.edge_count == 0:
        return Fraction(0), frozenset({0})

    def density_of(subset: frozenset[int]) -> Fraction:
        inside = sum(1 for u, v in g.edges if u in subset and v in subset)
        return Fraction(inside, len(subset))

    best_set = frozenset(range(g.n))
    best = density_of(best_set)
    while True:
        improved = _denser_subset(g, best)
        if improved is None:
            return best, best_set
        best_set = improved
        best = density_of(improved)


@dataclass(frozen=True)
class ClassReport:
    """Outcome of the no-K33 plus bounded-subgraph-density membership test."""

    member: bool
    c: Fraction
    k33_witness: Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]
    max_density: Fraction
    density_witness: Optional[frozenset[int]]


def sparse_k33_free(g: Graph, c) -> ClassReport:
    """Membership test: no K_{3,3} subgraph and all subgraph densities <= c."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("density bound must be positive")
    k33 = find_k33(g)
    density, dense_set = (Fraction(0), None) if g.n == 0 else max_subgraph_density(g)
    member = k33 is None and density <= c
    witness = dense_set if density > c else None
    return ClassReport(member, c, k33, density, witness)


# ---------------------------------------------------------------------------
# Degree and co-degree accounting for members of the class

@dataclass(frozen=True)
class CodegreeReport:
    eps: Fraction
    c: Fraction
    big_vertices: tuple[int, ...]
    size_bound: Fraction
    codegree_sum: int
    codegree_bound: Fraction
    ok: bool


def check_codegree_bound(g: Graph, c, eps) -> CodegreeReport:
    """High-degree vertices are few and share few neighbors, quantitatively.

    With V~ = {v : deg(v) >= eps*n}, checks |V~| <= 2c/eps and
    sum of co-degrees over pairs of V~ <= n + 4*(c/eps)^4.
    """
    c, eps = Fraction(c), Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    membership = sparse_k33_free(g, c)
    if not membership.member:
        raise ValueError("graph is not in the host class for this bound")
    n = g.n
    big = tuple(v for v in range(n) if g.degree(v) >= eps * n)
    size_bound = 2 * c / eps
    cosum = sum(g.codegree(u, v) for u, v in combinations(big, 2))
    cobound = n + 4 * (c / eps) ** 4
    ok = len(big) <= size_bound and cosum <= cobound
    return CodegreeReport(eps, c, big, size_bound, cosum, cobound, ok)


@dataclass(frozen=True)
class CodegreeProductReport:
    lhs: int
    rhs: Fraction
    copies: int
    aut: int
    ok: bool


def check_codegree_product_bound(g: Graph, h: Graph, k: int) -> CodegreeProductReport:
    """Sum over copies of h in the complete graph on V(g) of the product of
    co-degrees (in g) raised to k, against (2|E(g)|)^(k*m) / |Aut h|.
    """
    if h.has_isolated_vertices():
        raise ValueError("pattern must have no isolated vertices")
    if k < 1 or k * h.min_degree() < 2:
        raise ValueError("requires k * min_degree(pattern) >= 2")
    m = h.edge_count
    copies = enumerate_copies(complete_graph(g.n), h).copies
    lhs = 0
    for edges in copies:
        prod = 1
        for u, v in edges:
            prod *= g.codegree(u, v) ** k
            if prod == 0:
                break
        lhs += prod
    aut = automorphism_count(h)
    rhs = Fraction((2 * g.edge_count) ** (k * m), aut)
    return CodegreeProductReport(lhs, rhs, len(copies), aut, lhs <= rhs)


@dataclass(frozen=True)
class EvenPathReport:
    m: int
    count: int
    bound: int
    ok: bool


def check_even_path_bound(g: Graph, m: int) -> EvenPathReport:
    """Copies of the 2m-vertex path never exceed (2|E|)^m / 2."""
    if m < 1:
        raise ValueError("m must be positive")
    count = count_path_copies(g, 2 * m)
    bound = (2 * g.edge_count) ** m // 2
    return EvenPathReport(m, count, bound, count <= bound)


# ---------------------------------------------------------------------------
# Small-n planarity oracle for test fixtures (n <= 10)

def _contract(g: Graph, u: int, v: int) -> Graph:
    keep = [x for x in range(g.n) if x != v]
    idx = {x: i for i, x in enumerate(keep)}
    edges = set()
    for a, b in g.edges:
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            edges.add((min(idx[a2], idx[b2]), max(idx[a2], idx[b2])))
    return Graph(g.n - 1, frozenset(edges))


def _has_k5_subgraph(g: Graph) -> bool:
    cands = [v for v in range(g.n) if g.degree(v) >= 4]
    adj = g.adjacency
    for quint in combinations(cands, 5):
        if all(b in adj[a] for a, b in combinations(quint, 2)):
            return True
    return False


def _has_forbidden_minor(g: Graph) -> bool:
    """Search the contraction space for a K_5 or K_{3,3} subgraph.

    Contraction-only search suffices: a minor's branch sets can be collapsed
    edge by edge, after which the target appears as a subgraph. States are
    deduplicated by canonical form.
    """
    seen = {canonical_key(g)}
    stack = [g]
    while stack:
        cur = stack.pop()
        if cur.edge_count < 9:
            continue  # both targets need at least 9 edges
        if _has_k5_subgraph(cur) or find_k33(cur) is not None:
            return True
        for u, v in cur.sorted_edges:
            child = _contract(cur, u, v)
            key = canonical_key(child)
            if key not in seen:
                seen.add(key)
                stack.append(child)
    return False


def is_planar(g: Graph) -> bool:
    """Planarity for n <= 10, by excluded-minor search. Fixture use only."""
    if g.n > 10:
        raise ValueError("planarity oracle is limited to 10 vertices")
    for comp in g.connected_components():
        sub = g.induced_subgraph(comp)
        n, m = sub.n, sub.edge_count
        if m <= 8:
            continue  # too few edges to host either forbidden minor
        if n >= 3 and m > 3 * n - 6:
            return False
        if sub.max_degree() <= 2:
            continue
        if _has_forbidden_minor(sub):
            return False
    return True
