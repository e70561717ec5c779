"""Immutable simple-graph substrate: constructors, edge blow-ups, serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 0..n-1.

    Edges are stored as a frozenset of (u, v) pairs with u < v; the
    validator rejects loops and out-of-range endpoints.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def codegree(self, u: int, v: int) -> int:
        """Number of common neighbors of u and v."""
        return len(self.adjacency[u] & self.adjacency[v])

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((len(a) for a in self.adjacency), reverse=True))

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def has_isolated_vertices(self) -> bool:
        return any(len(a) == 0 for a in self.adjacency)

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = normalize_edge(u, v)
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return Graph(self.n, self.edges - {e})

    def add_edge(self, u: int, v: int) -> "Graph":
        e = normalize_edge(u, v)
        return Graph(self.n, self.edges | {e})

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..k-1 in sorted vertex order."""
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        edges = {(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx}
        return Graph(len(vs), frozenset(edges))

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adjacency[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps


def make_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; rejects loops and duplicate edges."""
    edges: set[Edge] = set()
    for u, v in edge_list:
        e = normalize_edge(int(u), int(v))
        if e in edges:
            raise ValueError(f"duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return make_graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return make_graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ValueError("part sizes must be nonnegative")
    return make_graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def matching_graph(m: int) -> Graph:
    """Disjoint union of m independent edges on 2m vertices."""
    if m < 1:
        raise ValueError("matching needs at least one edge")
    return make_graph(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))


def icosahedron_graph() -> Graph:
    """Skeleton of the icosahedron: 12 vertices, 30 edges, 5-regular.

    Vertices are the cyclic permutations of (0, +-1, +-phi); two vertices
    are adjacent exactly when their squared distance is 4 (the edge length
    of this standard embedding).
    """
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            pts.append((0.0, a, b))
            pts.append((a, b, 0.0))
            pts.append((b, 0.0, a))
    edges = []
    for i in range(12):
        for j in range(i + 1, 12):
            d2 = sum((pts[i][k] - pts[j][k]) ** 2 for k in range(3))
            if d2 < 5.0:  # edges have d2 = 4, non-edges d2 >= 4 + 4*phi
                edges.append((i, j))
    g = make_graph(12, edges)
    assert g.edge_count == 30 and g.degree_sequence == (5,) * 12
    return g


def edge_blowup(h: Graph, k: int) -> Graph:
    """Replace every edge xy of h by k new vertices adjacent to x and y.

    The original edge is removed. Original vertices keep their labels;
    the k new vertices per edge are appended in sorted-edge order.
    """
    if k < 1:
        raise ValueError("blow-up size k must be at least 1")
    return edge_blowup_map(h, {e: k for e in h.edges})


def edge_blowup_map(h: Graph, sizes: Mapping[Edge, int]) -> Graph:
    """Per-edge blow-up; edges missing from `sizes` get size 0 (just removed)."""
    for e, s in sizes.items():
        if normalize_edge(*e) not in h.edges:
            raise ValueError(f"size given for non-edge {e}")
        if s < 0:
            raise ValueError("part sizes must be nonnegative")
    edges: list[Edge] = []
    nxt = h.n
    for u, v in h.sorted_edges:
        for _ in range(sizes.get((u, v), 0)):
            edges.append((u, nxt))
            edges.append((v, nxt))
            nxt += 1
    return make_graph(nxt, edges)


def is_path(g: Graph) -> bool:
    """True when g is a path on all of its vertices."""
    if g.n == 1:
        return g.edge_count == 0
    if g.edge_count != g.n - 1 or len(g.connected_components()) != 1:
        return False
    degs = g.degree_sequence
    return degs[0] <= 2 and degs.count(1) == 2


def is_cycle(g: Graph) -> bool:
    if g.n < 3 or g.edge_count != g.n:
        return False
    return all(g.degree(v) == 2 for v in range(g.n)) and len(g.connected_components()) == 1


def is_complete(g: Graph) -> bool:
    return g.edge_count == g.n * (g.n - 1) // 2


# ---------------------------------------------------------------------------
# graph6 serialization (McKay's format, short and long vertex-count forms)

def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise ValueError("graph too large for graph6")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p:p + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return "".join(chr(c) for c in head + body)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise ValueError("invalid graph6 character")
    if data[0] == 63:  # '~' prefix: 18-bit vertex count
        if len(data) < 4:
            raise ValueError("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    if len(data) != (need + 5) // 6:
        raise ValueError("graph6 body has wrong length")
    bits = []
    for d in data:
        for shift in range(5, -1, -1):
            bits.append((d >> shift) & 1)
    if any(bits[need:]):
        raise ValueError("nonzero padding bits in graph6 body")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return make_graph(n, edges)


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.sorted_edges]}


def graph_from_json_dict(d: Mapping) -> Graph:
    return make_graph(int(d["n"]), [(int(u), int(v)) for u, v in d["edges"]])


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True)


def graph_from_json(s: str) -> Graph:
    return graph_from_json_dict(json.loads(s))
