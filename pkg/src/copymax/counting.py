"""Subgraph copy enumeration, automorphisms, and canonical forms.

Copy counting uses backtracking over pattern vertices in a connectivity-first
order with degree pruning; copies are deduplicated by (vertex-set, edge-set).
Intended for desk scale: hosts up to roughly 35 vertices, automorphism
searches up to roughly 12 vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graphs import Edge, Graph, normalize_edge


@dataclass(frozen=True)
class CopyEnumeration:
    """All unlabeled copies of `pattern` inside `host`, as host edge-sets."""

    pattern: Graph
    host: Graph
    copies: tuple[frozenset[Edge], ...]

    def count(self) -> int:
        return len(self.copies)


def _search_order(pattern: Graph) -> tuple[list[int], list[list[int]]]:
    """Order pattern vertices so each one touches as many placed ones as possible.

    Returns the order plus, for each position, the earlier positions holding
    pattern-neighbors of that vertex.
    """
    remaining = set(range(pattern.n))
    order: list[int] = []
    pos: dict[int, int] = {}
    while remaining:
        if order:
            v = max(
                remaining,
                key=lambda u: (
                    sum(1 for w in pattern.adjacency[u] if w in pos),
                    pattern.degree(u),
                    -u,
                ),
            )
        else:
            v = max(remaining, key=lambda u: (pattern.degree(u), -u))
        pos[v] = len(order)
        order.append(v)
        remaining.discard(v)
    anchors = [
        sorted(pos[w] for w in pattern.adjacency[v] if pos[w] < i)
        for i, v in enumerate(order)
    ]
    return order, anchors


def iter_injective_maps(host: Graph, pattern: Graph) -> Iterator[tuple[int, ...]]:
    """Yield injective maps V(pattern) -> V(host) sending edges to edges.

    Maps are yielded as tuples indexed by pattern vertex. Every pattern edge
    lands on a host edge; non-edges of the pattern are unconstrained.
    """
    if pattern.n == 0:
        yield ()
        return
    if pattern.n > host.n:
        return
    order, anchors = _search_order(pattern)
    pat_deg = [pattern.degree(v) for v in order]
    host_adj = host.adjacency
    host_deg = [host.degree(v) for v in range(host.n)]
    image = [-1] * pattern.n
    used = [False] * host.n
    p = pattern.n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == p:
            yield tuple(image)
            return
        anc = anchors[i]
        if anc:
            cands = host_adj[image[order[anc[0]]]]
            for j in anc[1:]:
                cands = cands & host_adj[image[order[j]]]
            cands = sorted(cands)
        else:
            cands = range(host.n)
        need = pat_deg[i]
        for hv in cands:
            if used[hv] or host_deg[hv] < need:
                continue
            used[hv] = True
            image[order[i]] = hv
            yield from extend(i + 1)
            used[hv] = False
        image[order[i]] = -1

    yield from extend(0)


def enumerate_copies(host: Graph, pattern: Graph) -> CopyEnumeration:
    """Distinct subgraphs of host isomorphic to pattern.

    Copies are distinguished by vertex-set and edge-set, so patterns with
    isolated vertices are counted with their isolated-vertex placements.
    """
    if pattern.n < 1:
        raise ValueError("pattern needs at least one vertex")
    pat_edges = pattern.sorted_edges
    seen: set[tuple[frozenset[int], frozenset[Edge]]] = set()
    copies: list[frozenset[Edge]] = []
    for img in iter_injective_maps(host, pattern):
        edges = frozenset(normalize_edge(img[u], img[v]) for u, v in pat_edges)
        key = (frozenset(img), edges)
        if key not in seen:
            seen.add(key)
            copies.append(edges)
    copies.sort(key=lambda es: sorted(es))
    return CopyEnumeration(pattern, host, tuple(copies))


def count_copies(host: Graph, pattern: Graph) -> int:
    return enumerate_copies(host, pattern).count()


def count_injective_maps(host: Graph, pattern: Graph) -> int:
    return sum(1 for _ in iter_injective_maps(host, pattern))


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of g as vertex maps.

    Any injective adjacency-preserving self-map is an automorphism: it sends
    the edge set injectively into itself, hence onto itself.
    """
    return sorted(iter_injective_maps(g, g))


def automorphism_count(g: Graph) -> int:
    return count_injective_maps(g, g)


def edge_orbits(g: Graph) -> tuple[frozenset[Edge], ...]:
    """Orbits of the edge set under the automorphism group."""
    if not g.edges:
        return ()
    parent: dict[Edge, Edge] = {e: e for e in g.edges}

    def find(e: Edge) -> Edge:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for sigma in automorphisms(g):
        for u, v in g.edges:
            a, b = find((u, v)), find(normalize_edge(sigma[u], sigma[v]))
            if a != b:
                parent[a] = b
    orbits: dict[Edge, set[Edge]] = {}
    for e in g.edges:
        orbits.setdefault(find(e), set()).add(e)
    return tuple(sorted((frozenset(o) for o in orbits.values()), key=lambda o: sorted(o)))


def is_edge_transitive(g: Graph) -> bool:
    return len(edge_orbits(g)) == 1


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    if a.degree_sequence != b.degree_sequence:
        return False
    # An injective hom between graphs with equal vertex and edge counts is
    # onto both, hence an isomorphism.
    return next(iter_injective_maps(b, a), None) is not None


# ---------------------------------------------------------------------------
# Specialized DFS counters: these dominate runtimes for long paths and cycles.

def count_path_copies(host: Graph, r: int) -> int:
    """Number of copies of the r-vertex path in host."""
    if r < 1:
        raise ValueError("path order must be positive")
    if r == 1:
        return host.n
    adj = [sorted(s) for s in host.adjacency]
    on_path = [False] * host.n

    def extend(v: int, depth: int) -> int:
        if depth == r:
            return 1
        total = 0
        on_path[v] = True
        for w in adj[v]:
            if not on_path[w]:
                total += extend(w, depth + 1)
        on_path[v] = False
        return total

    ordered = sum(extend(s, 1) for s in range(host.n))
    return ordered // 2


def count_cycle_copies(host: Graph, r: int) -> int:
    """Number of copies of the r-vertex cycle in host."""
    if r < 3:
        raise ValueError("cycle order must be at least 3")
    adj = [sorted(s) for s in host.adjacency]
    on_path = [False] * host.n
    total = 0

    def extend(start: int, v: int, depth: int) -> int:
        # intermediate vertices stay above `start`, so each cycle is rooted
        # at its minimum vertex and traversed in both directions
        if depth == r:
            return 1 if start in host.adjacency[v] else 0
        count = 0
        on_path[v] = True
        for w in adj[v]:
            if w > start and not on_path[w]:
                count += extend(start, w, depth + 1)
        on_path[v] = False
        return count

    for s in range(host.n):
        total += extend(s, s, 1)
    return total // 2


# ---------------------------------------------------------------------------
# Canonical forms, used for isomorphism-free enumeration and memoization.

def _refine(adj: list[frozenset[int]], colors: list[int]) -> list[int]:
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def canonical_key(g: Graph) -> bytes:
    """Canonical bytes encoding of g's isomorphism class.

    Individualization-refinement: refine colors, branch on each vertex of the
    first non-singleton class, and take the minimum adjacency encoding over
    all discrete leaves.
    """
    n = g.n
    if n == 0:
        return b"\x00"
    if n > 255:
        raise ValueError("canonical_key supports at most 255 vertices")
    adj = list(g.adjacency)
    best: bytes | None = None

    def encode(order: list[int]) -> bytes:
        bits = 0
        idx = 0
        for j in range(1, n):
            aj = adj[order[j]]
            for i in range(j):
                if order[i] in aj:
                    bits |= 1 << idx
                idx += 1
        nbytes = (idx + 7) // 8
        return bytes([n]) + bits.to_bytes(nbytes or 1, "big")

    def rec(colors: list[int]) -> None:
        nonlocal best
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            key = encode(sorted(range(n), key=lambda v: colors[v]))
            if best is None or key < best:
                best = key
            return
        for v in target:
            branched = [2 * c + 1 for c in colors]
            branched[v] -= 1
            rec(_refine(adj, branched))

    rec(_refine(adj, [0] * n))
    assert best is not None
    return best
