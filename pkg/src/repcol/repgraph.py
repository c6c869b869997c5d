"""Construction of the representation graph and its structural recognizers.

The representation graph has one vertex per oriented non-edge (arc) of the
input graph. An arc (u, v) with u before v in the ordering means "u stands
for the color class containing v". Two arcs are adjacent exactly when they
cannot both be chosen:

  (i)   same head: a vertex is represented at most once;
  (ii)  the head of one is the tail of the other: a represented vertex does
        not itself represent;
  (iii) same tail with adjacent heads: one vertex cannot represent both
        endpoints of an edge.

This is the closed form of co-occurrence of the two variables in some row
of the clique-based model: (i) both in a lower sum, (ii) one in the lower
sum and one in a (possibly singleton) clique sum of the shared vertex,
(iii) both in a clique sum with a clique containing the two heads. Vertices
with an empty upper non-neighborhood contribute adjacency among their
in-arcs via (i) alone, which is the row with an empty clique part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Optional

from .graphs import (
    CapExceeded,
    Graph,
    VertexOrdering,
    _bits,
    canonical_edge,
    cojoin_decompose,
    complement,
)

ORDERING_ENUMERATION_CAP = 8


class Arc(NamedTuple):
    """Oriented non-edge; the tail precedes the head in the ordering in force."""

    tail: int
    head: int


@dataclass(frozen=True)
class RepGraph:
    """Graph on the arcs of an oriented complement; edges are index pairs."""

    arcs: tuple[Arc, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_index(self) -> dict[Arc, int]:
        return {a: i for i, a in enumerate(self.arcs)}

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * len(self.arcs)
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def as_graph(self) -> Graph:
        return Graph(len(self.arcs), self.edges)


def arcs_of(g: Graph, ordering: VertexOrdering) -> tuple[Arc, ...]:
    """All non-edges oriented by the ordering, sorted by (tail, head) id."""
    arcs = []
    for u, v in g.non_edges():
        if ordering.precedes(u, v):
            arcs.append(Arc(u, v))
        else:
            arcs.append(Arc(v, u))
    return tuple(sorted(arcs))


def arcs_adjacent(g: Graph, a: Arc, b: Arc) -> bool:
    if a.head == b.head:
        return True
    if a.head == b.tail or b.head == a.tail:
        return True
    return a.tail == b.tail and g.has_edge(a.head, b.head)


def build_rep(g: Graph, ordering: VertexOrdering) -> RepGraph:
    arcs = arcs_of(g, ordering)
    edges = set()
    for i, j in itertools.combinations(range(len(arcs)), 2):
        if arcs_adjacent(g, arcs[i], arcs[j]):
            edges.add((i, j))
    return RepGraph(arcs, frozenset(edges))


def line_graph(h: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of h plus the edge labels of its vertices, in sorted order."""
    labels = tuple(sorted(h.edges))
    edges = set()
    for i, j in itertools.combinations(range(len(labels)), 2):
        if set(labels[i]) & set(labels[j]):
            edges.add((i, j))
    return Graph(len(labels), frozenset(edges)), labels


def _rep_edges_as_pairs(r: RepGraph) -> set[frozenset[tuple[int, int]]]:
    out = set()
    for i, j in r.edges:
        a, b = r.arcs[i], r.arcs[j]
        out.add(frozenset({canonical_edge(*a), canonical_edge(*b)}))
    return out


def is_spanning_subgraph_of_linegraph(r: RepGraph, g: Graph, ordering: VertexOrdering) -> bool:
    """Vertex sets agree under the arc/edge identification and edges are a subset."""
    lg, labels = line_graph(complement(g))
    if {canonical_edge(*a) for a in r.arcs} != set(labels):
        return False
    line_pairs = set()
    for i, j in lg.edges:
        line_pairs.add(frozenset({labels[i], labels[j]}))
    return _rep_edges_as_pairs(r) <= line_pairs


def _distinct_orientations(g: Graph, cap: int):
    """Yield one ordering per distinct induced orientation of the complement.

    The representation graph depends on the ordering only through the
    orientation it induces on the non-edges, so permutations that orient
    every non-edge identically are skipped.
    """
    if g.n > cap:
        raise CapExceeded(f"ordering enumeration: n={g.n} exceeds cap {cap}")
    non_edges = g.non_edges()
    seen: set[int] = set()
    for perm in itertools.permutations(range(g.n)):
        rank = [0] * g.n
        for pos, v in enumerate(perm):
            rank[v] = pos
        signature = 0
        for k, (u, v) in enumerate(non_edges):
            if rank[u] < rank[v]:
                signature |= 1 << k
        if signature in seen:
            continue
        seen.add(signature)
        yield VertexOrdering(tuple(rank))


def rep_equals_linegraph_all_orderings(g: Graph, cap: int = ORDERING_ENUMERATION_CAP) -> bool:
    """True iff the representation graph equals the complement's line graph
    for every vertex ordering."""
    lg, labels = line_graph(complement(g))
    line_pairs = {frozenset({labels[i], labels[j]}) for i, j in lg.edges}
    for ordering in _distinct_orientations(g, cap):
        r = build_rep(g, ordering)
        if _rep_edges_as_pairs(r) != line_pairs:
            return False
    return True


# ---------------------------------------------------------------------------
# Claw-free / quasi-line recognition


def is_claw_free(h: Graph) -> bool:
    """No induced K_{1,3}."""
    for v in range(h.n):
        nbrs = list(_bits(h.adj[v]))
        for a, b in itertools.combinations(nbrs, 2):
            if h.has_edge(a, b):
                continue
            third = h.adj[v] & ~h.adj[a] & ~h.adj[b] & ~((1 << a) | (1 << b))
            if third:
                return False
    return True


def is_quasi_line(h: Graph) -> bool:
    """Every neighborhood splits into two cliques, i.e. the complement of
    each neighborhood subgraph is bipartite."""
    for v in range(h.n):
        nbrs = list(_bits(h.adj[v]))
        color: dict[int, int] = {}
        for start in nbrs:
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                for w in nbrs:
                    if w == u or h.has_edge(u, w):
                        continue
                    if w not in color:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False
    return True


class OrderingSweep(NamedTuple):
    """Outcome of an all-orderings property sweep."""

    always: bool
    witness: Optional[VertexOrdering]


def _sweep(g: Graph, predicate: Callable[[Graph], bool], cap: int) -> OrderingSweep:
    for ordering in _distinct_orientations(g, cap):
        r = build_rep(g, ordering)
        if not predicate(r.as_graph()):
            return OrderingSweep(False, ordering)
    return OrderingSweep(True, None)


def quasiline_status_all_orderings(g: Graph, cap: int = ORDERING_ENUMERATION_CAP) -> OrderingSweep:
    return _sweep(g, is_quasi_line, cap)


def clawfree_status_all_orderings(g: Graph, cap: int = ORDERING_ENUMERATION_CAP) -> OrderingSweep:
    return _sweep(g, is_claw_free, cap)


# ---------------------------------------------------------------------------
# Path-expanded auxiliary graph for the complete-join decomposition


@dataclass(frozen=True)
class PathExpandedGraph:
    """Disjoint union of the complemented core and one 4-path per stable triple.

    ``graph`` is on contiguous ids; ``labels[i]`` is the semantic id of
    vertex i (original vertex ids, with fresh path endpoints above n).
    ``arc_for_edge`` maps each edge of ``graph`` to the arc it stands for.
    """

    graph: Graph
    labels: tuple[int, ...]
    arc_for_edge: dict[tuple[int, int], Arc]


def build_path_expanded(g: Graph, ordering: VertexOrdering) -> Optional[PathExpandedGraph]:
    """The auxiliary graph whose line graph realizes the representation graph
    when the complement has no K4, paw or diamond. None when not applicable.

    Each stable triple t0 < t1 < t2 (by the ordering) becomes a path
    a - t1 - t2 - b with fresh endpoints a, b; the fresh ids are n + 2i and
    n + 2i + 1 for the i-th triple. The natural edge/arc correspondence is
    a t1 -> (t0, t1), t1 t2 -> (t1, t2), t2 b -> (t0, t2), and every core
    edge {x, y} -> the arc on {x, y}. Orderings interleaving triple vertices
    with the rest are fine: arcs never cross join components.
    """
    decomposition = cojoin_decompose(g)
    if decomposition is None:
        return None

    label_edges: list[tuple[int, int]] = []
    edge_arcs: list[Arc] = []
    vertex_labels: set[int] = set(decomposition.core)

    core = sorted(decomposition.core)
    for x, y in itertools.combinations(core, 2):
        if not g.has_edge(x, y):
            label_edges.append(canonical_edge(x, y))
            tail, head = (x, y) if ordering.precedes(x, y) else (y, x)
            edge_arcs.append(Arc(tail, head))

    for i, triple in enumerate(decomposition.triples):
        t0, t1, t2 = sorted(triple, key=ordering.rank.__getitem__)
        a, b = g.n + 2 * i, g.n + 2 * i + 1
        vertex_labels |= {t1, t2, a, b}
        label_edges.append(canonical_edge(a, t1))
        edge_arcs.append(Arc(t0, t1))
        label_edges.append(canonical_edge(t1, t2))
        edge_arcs.append(Arc(t1, t2))
        label_edges.append(canonical_edge(t2, b))
        edge_arcs.append(Arc(t0, t2))

    labels = tuple(sorted(vertex_labels))
    index = {lab: i for i, lab in enumerate(labels)}
    graph = Graph.from_edges(len(labels), [(index[x], index[y]) for x, y in label_edges])
    arc_for_edge = {
        canonical_edge(index[x], index[y]): arc
        for (x, y), arc in zip(label_edges, edge_arcs)
    }
    return PathExpandedGraph(graph, labels, arc_for_edge)


def line_graph_matches_rep(expanded: PathExpandedGraph, r: RepGraph) -> bool:
    """Check the natural edge-to-arc map is an isomorphism onto the rep graph."""
    lg, labels = line_graph(expanded.graph)
    if len(labels) != r.n_arcs:
        return False
    mapped = [expanded.arc_for_edge[e] for e in labels]
    if set(mapped) != set(r.arcs):
        return False
    lg_pairs = {frozenset({mapped[i], mapped[j]}) for i, j in lg.edges}
    rep_pairs = {frozenset({r.arcs[i], r.arcs[j]}) for i, j in r.edges}
    return lg_pairs == rep_pairs
