"""Core graph types and exact small-scale graph algorithms.

Graphs are simple and undirected, with vertices 0..n-1 and edges stored
canonically (smaller endpoint first). All types are immutable; every
operation is a pure function, so shared instances are safe to use
concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional

import networkx as nx

#: Vertex cap for the exact alpha/chi searches. Exceeding it is an error,
#: never an approximation.
DEFAULT_EXACT_CAP = 24

PATTERNS = ("triangle", "K4", "K5", "paw", "diamond", "kite", "claw")


class CapExceeded(Exception):
    """An exact computation was requested beyond its configured size cap."""


class ParseError(ValueError):
    """Malformed input file; the message names the offending line."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) is not canonical or out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(canonical_edge(u, v) for u, v in edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmasks, one int per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges

    def neighbors(self, u: int) -> frozenset[int]:
        return frozenset(_bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def non_edges(self) -> list[tuple[int, int]]:
        """All canonical vertex pairs that are not edges."""
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        ]

    def check_vertex(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise ValueError(f"unknown vertex {u}")


def complement(g: Graph) -> Graph:
    return Graph(g.n, frozenset(g.non_edges()))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph on ``vertices``, relabeled to 0..k-1 in sorted order."""
    vs = sorted(set(vertices))
    for u in vs:
        g.check_vertex(u)
    index = {u: i for i, u in enumerate(vs)}
    edges = [
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    ]
    return Graph.from_edges(len(vs), edges)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    stack = [0]
    adj = g.adj
    while stack:
        u = stack.pop()
        fresh = adj[u] & ~seen
        seen |= fresh
        stack.extend(_bits(fresh))
    return seen == (1 << g.n) - 1


# ---------------------------------------------------------------------------
# Orderings and precolorings


@dataclass(frozen=True)
class VertexOrdering:
    """Total order on the vertices; rank[v] is the position of v (0 = smallest)."""

    rank: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise ValueError("rank is not a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(tuple(range(n)))

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "VertexOrdering":
        """Build from the vertex sequence listed smallest-first."""
        seq = list(seq)
        if sorted(seq) != list(range(len(seq))):
            raise ValueError("ordering sequence is not a permutation of 0..n-1")
        rank = [0] * len(seq)
        for position, v in enumerate(seq):
            rank[v] = position
        return cls(tuple(rank))

    @property
    def n(self) -> int:
        return len(self.rank)

    @cached_property
    def sequence(self) -> tuple[int, ...]:
        """Vertices listed from smallest to largest."""
        return tuple(sorted(range(self.n), key=self.rank.__getitem__))

    def precedes(self, u: int, v: int) -> bool:
        return self.rank[u] < self.rank[v]

    def minimum(self, vertices: Iterable[int]) -> int:
        return min(vertices, key=self.rank.__getitem__)


@dataclass(frozen=True)
class Precoloring:
    """Partial assignment of positive color ids to vertices."""

    assignment: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for v, c in self.assignment:
            if c <= 0:
                raise ValueError(f"color {c} for vertex {v} is not positive")
            if v in seen:
                raise ValueError(f"vertex {v} precolored twice")
            seen.add(v)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Precoloring":
        return cls(tuple(sorted(mapping.items())))

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.assignment)

    @cached_property
    def domain(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.assignment)

    @cached_property
    def classes(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {}
        for v, c in self.assignment:
            out.setdefault(c, set()).add(v)
        return {c: frozenset(vs) for c, vs in out.items()}

    def is_proper(self, g: Graph) -> bool:
        for v, _ in self.assignment:
            g.check_vertex(v)
        for u, v in itertools.combinations(sorted(self.domain), 2):
            if self.mapping[u] == self.mapping[v] and g.has_edge(u, v):
                return False
        return True

    def require_proper(self, g: Graph) -> None:
        if not self.is_proper(g):
            raise ValueError("precoloring is not proper")


def lower_nonneighborhood(g: Graph, ordering: VertexOrdering, u: int) -> frozenset[int]:
    """Non-neighbors of u that come before u in the ordering."""
    g.check_vertex(u)
    return frozenset(
        v
        for v in range(g.n)
        if v != u and not g.has_edge(u, v) and ordering.precedes(v, u)
    )


def upper_nonneighborhood(g: Graph, ordering: VertexOrdering, u: int) -> frozenset[int]:
    """Non-neighbors of u that come after u in the ordering."""
    g.check_vertex(u)
    return frozenset(
        v
        for v in range(g.n)
        if v != u and not g.has_edge(u, v) and ordering.precedes(u, v)
    )


def ordering_identity(g: Graph) -> VertexOrdering:
    return VertexOrdering.identity(g.n)


def ordering_by_weight(g: Graph, weights: Mapping[int, Fraction]) -> VertexOrdering:
    """Vertices by non-increasing weight, ties broken by ascending id."""
    for v in range(g.n):
        if v not in weights:
            raise ValueError(f"weight missing for vertex {v}")
        if weights[v] < 0:
            raise ValueError(f"weight of vertex {v} is negative")
    seq = sorted(range(g.n), key=lambda v: (-weights[v], v))
    return VertexOrdering.from_sequence(seq)


def ordering_consistent(g: Graph, precoloring: Precoloring) -> VertexOrdering:
    """An ordering where each color class is led by its smallest-id member.

    Blocks: one representative per class, then the remaining precolored
    vertices, then everything else; ascending id inside each block.
    """
    precoloring.require_proper(g)
    reps = sorted(min(members) for members in precoloring.classes.values())
    rest_precolored = sorted(precoloring.domain - set(reps))
    uncolored = sorted(set(range(g.n)) - precoloring.domain)
    return VertexOrdering.from_sequence(reps + rest_precolored + uncolored)


def is_consistent(ordering: VertexOrdering, precoloring: Precoloring) -> bool:
    """True iff every color class has a member preceding every unprecolored vertex."""
    uncolored = [v for v in range(ordering.n) if v not in precoloring.domain]
    for members in precoloring.classes.values():
        first = min(ordering.rank[v] for v in members)
        if any(ordering.rank[w] < first for w in uncolored):
            return False
    return True


def rep_of(v: int, precoloring: Precoloring, ordering: VertexOrdering) -> int:
    """The ordering-minimum vertex of v's color class."""
    if v not in precoloring.domain:
        raise ValueError(f"vertex {v} is not precolored")
    members = precoloring.classes[precoloring.mapping[v]]
    return ordering.minimum(members)


# ---------------------------------------------------------------------------
# Fixed-pattern subgraph detection (subgraph containment, not induced)


def _has_triangle(g: Graph) -> bool:
    return any(g.adj[u] & g.adj[v] for u, v in g.edges)


def _has_clique(g: Graph, k: int) -> bool:
    return any(len(c) >= k for c in maximal_cliques(g))


def _has_paw(g: Graph) -> bool:
    # Triangle plus a pendant attached anywhere on it.
    full = (1 << g.n) - 1
    for u, v in g.edges:
        for w in _bits(g.adj[u] & g.adj[v]):
            tri = (1 << u) | (1 << v) | (1 << w)
            if any(g.adj[t] & ~tri & full for t in (u, v, w)):
                return True
    return False


def _has_diamond(g: Graph) -> bool:
    # Two triangles sharing an edge.
    return any((g.adj[u] & g.adj[v]).bit_count() >= 2 for u, v in g.edges)


def _has_kite(g: Graph) -> bool:
    # Triangle, pendant d on it, and a further vertex e attached to d.
    for u, v in g.edges:
        for w in _bits(g.adj[u] & g.adj[v]):
            tri = (1 << u) | (1 << v) | (1 << w)
            for t in (u, v, w):
                for d in _bits(g.adj[t] & ~tri):
                    if g.adj[d] & ~(tri | (1 << d)):
                        return True
    return False


def _has_claw(g: Graph) -> bool:
    # K_{1,3} as a subgraph is just a vertex of degree >= 3.
    return any(g.degree(u) >= 3 for u in range(g.n))


_PATTERN_CHECKS = {
    "triangle": _has_triangle,
    "K4": lambda g: _has_clique(g, 4),
    "K5": lambda g: _has_clique(g, 5),
    "paw": _has_paw,
    "diamond": _has_diamond,
    "kite": _has_kite,
    "claw": _has_claw,
}


def contains_subgraph(g: Graph, pattern: str) -> bool:
    """True iff g contains the named pattern as a (not necessarily induced) subgraph."""
    try:
        check = _PATTERN_CHECKS[pattern]
    except KeyError:
        raise ValueError(f"unknown pattern {pattern!r}; expected one of {PATTERNS}")
    return check(g)


# ---------------------------------------------------------------------------
# Exact invariants


def stability_number(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    """Exact maximum stable set size, by branch and bound."""
    if g.n > cap:
        raise CapExceeded(f"stability_number: n={g.n} exceeds cap {cap}")
    adj = g.adj

    def grow(candidates: int, size: int, best: int) -> int:
        while candidates:
            if size + candidates.bit_count() <= best:
                return best
            # Branch on the candidate of maximum degree inside the candidate set.
            u = max(_bits(candidates), key=lambda v: (adj[v] & candidates).bit_count())
            best = max(best, grow(candidates & ~adj[u] & ~(1 << u), size + 1, best))
            candidates &= ~(1 << u)
            if size + candidates.bit_count() <= best:
                return best
        return max(best, size)

    return grow((1 << g.n) - 1, 0, 0)


def _greedy_coloring_bound(g: Graph) -> int:
    colors: list[int] = [-1] * g.n
    used = 0
    for u in sorted(range(g.n), key=g.degree, reverse=True):
        taken = {colors[v] for v in _bits(g.adj[u])}
        c = 0
        while c in taken:
            c += 1
        colors[u] = c
        used = max(used, c + 1)
    return used if g.n else 0


def _max_clique_lower_bound(g: Graph) -> int:
    best = 0
    for c in maximal_cliques(g):
        best = max(best, len(c))
    return best


def _colorable(g: Graph, k: int) -> bool:
    """Backtracking k-colorability with canonical color introduction."""
    if g.n == 0:
        return True
    order = sorted(range(g.n), key=g.degree, reverse=True)
    class_masks = [0] * k

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        limit = min(used + 1, k)
        for c in range(limit):
            if class_masks[c] & g.adj[u]:
                continue
            class_masks[c] |= 1 << u
            if place(i + 1, max(used, c + 1)):
                return True
            class_masks[c] &= ~(1 << u)
        return False

    return place(0, 0)


def chromatic_number(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    """Exact chromatic number by iterative-deepening backtracking."""
    if g.n > cap:
        raise CapExceeded(f"chromatic_number: n={g.n} exceeds cap {cap}")
    if g.n == 0:
        return 0
    lower = max(1, _max_clique_lower_bound(g))
    upper = _greedy_coloring_bound(g)
    for k in range(lower, upper):
        if _colorable(g, k):
            return k
    return upper


def maximal_cliques(g: Graph, within: Optional[Iterable[int]] = None) -> list[frozenset[int]]:
    """All maximal cliques of g restricted to ``within`` (Bron-Kerbosch with pivot)."""
    if within is None:
        mask = (1 << g.n) - 1
    else:
        mask = 0
        for u in within:
            g.check_vertex(u)
            mask |= 1 << u
    if mask == 0:
        return []
    adj = g.adj
    out: list[frozenset[int]] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(frozenset(_bits(r)))
            return
        pivot = max(_bits(p | x), key=lambda v: (adj[v] & p).bit_count())
        for v in _bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, mask, 0)
    return sorted(out, key=sorted)


# ---------------------------------------------------------------------------
# Matching


def _to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(sorted(g.edges))
    return h


def maximum_matching(
    g: Graph,
    weights: Optional[Mapping[tuple[int, int], Fraction]] = None,
    forced: Optional[Iterable[tuple[int, int]]] = None,
) -> frozenset[tuple[int, int]]:
    """Maximum-cardinality (or maximum-weight) matching containing all forced edges.

    A matching containing the forced edges is the forced edges plus any
    matching of the graph with their endpoints removed, so the search runs
    on that reduced graph. Exact for rational weights.
    """
    forced_edges = frozenset(canonical_edge(u, v) for u, v in (forced or ()))
    blocked = 0
    for u, v in forced_edges:
        if (u, v) not in g.edges:
            raise ValueError(f"forced edge ({u},{v}) is not an edge")
        if blocked & ((1 << u) | (1 << v)):
            raise ValueError("forced edges share an endpoint")
        blocked |= (1 << u) | (1 << v)

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for u, v in sorted(g.edges):
        if blocked & ((1 << u) | (1 << v)):
            continue
        if weights is None:
            h.add_edge(u, v, weight=1)
        else:
            w = weights.get((u, v), weights.get((v, u)))
            if w is None:
                raise ValueError(f"weight missing for edge ({u},{v})")
            h.add_edge(u, v, weight=Fraction(w))
    mate = nx.max_weight_matching(h, maxcardinality=weights is None, weight="weight")
    return frozenset(canonical_edge(u, v) for u, v in mate) | forced_edges


def is_matching(g: Graph, edges: Iterable[tuple[int, int]]) -> bool:
    used = 0
    for u, v in edges:
        if canonical_edge(u, v) not in g.edges:
            return False
        if used & ((1 << u) | (1 << v)):
            return False
        used |= (1 << u) | (1 << v)
    return True


def is_2connected(g: Graph) -> bool:
    """Connected, at least three vertices, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    full = (1 << g.n) - 1
    adj = g.adj
    for u in range(g.n):
        remaining = full & ~(1 << u)
        start = (remaining & -remaining).bit_length() - 1
        seen = 1 << start
        stack = [start]
        while stack:
            w = stack.pop()
            fresh = adj[w] & remaining & ~seen
            seen |= fresh
            stack.extend(_bits(fresh))
        if seen != remaining:
            return False
    return True


def is_hypomatchable(g: Graph) -> bool:
    """True iff deleting any single vertex leaves a perfectly matchable graph."""
    if g.n % 2 == 0 and g.n > 0:
        return False
    for u in range(g.n):
        rest = induced_subgraph(g, set(range(g.n)) - {u})
        if 2 * len(maximum_matching(rest)) != rest.n:
            return False
    return True


# ---------------------------------------------------------------------------
# Complete-join decomposition


@dataclass(frozen=True)
class CojoinDecomposition:
    """Stable triples completely joined to the rest, plus a core with alpha <= 2."""

    core: frozenset[int]
    triples: tuple[tuple[int, int, int], ...]


def cojoin_decompose(g: Graph) -> Optional[CojoinDecomposition]:
    """Peel stable triples off a graph whose complement has no K4, paw or diamond.

    Returns None when the complement contains one of those patterns as a
    subgraph; otherwise every stable set of size three is completely joined
    to everything outside it, so greedy peeling is canonical.
    """
    cg = complement(g)
    if any(contains_subgraph(cg, p) for p in ("K4", "paw", "diamond")):
        return None
    remaining = set(range(g.n))
    triples: list[tuple[int, int, int]] = []
    while True:
        triple = _first_stable_triple(g, remaining)
        if triple is None:
            break
        triples.append(triple)
        remaining -= set(triple)
    return CojoinDecomposition(frozenset(remaining), tuple(triples))


def _first_stable_triple(g: Graph, vertices: set[int]) -> Optional[tuple[int, int, int]]:
    for u, v, w in itertools.combinations(sorted(vertices), 3):
        if not (g.has_edge(u, v) or g.has_edge(u, w) or g.has_edge(v, w)):
            return (u, v, w)
    return None
