"""Coloring solvers: matching-based for graphs with stability at most two,
and exact stable-set search on the representation graph for the rest.

Ties among optimal solutions are always broken toward the lexicographically
smallest arc vector, so results are reproducible down to the byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .graphs import (
    CapExceeded,
    Graph,
    Precoloring,
    VertexOrdering,
    canonical_edge,
    complement,
    contains_subgraph,
    maximum_matching,
    ordering_by_weight,
    ordering_consistent,
    ordering_identity,
    rep_of,
)
from .lab import ARC_ENUMERATION_CAP, Support, decode_support, encode_partition
from .model import build_model
from .repgraph import Arc, build_rep


class InfeasiblePrecoloring(Exception):
    """The precoloring admits no extension (structural, not a cap issue)."""


@dataclass(frozen=True)
class ColoringSolution:
    """A proper coloring as a partition plus its canonical arc vector."""

    classes: tuple[frozenset[int], ...]
    colors_used: int
    objective: Fraction
    vector: Support

    def __post_init__(self):
        assert self.colors_used == len(self.classes)


def _solution_from_partition(
    g: Graph,
    ordering: VertexOrdering,
    classes,
    objective: Fraction,
) -> ColoringSolution:
    parts = sorted((frozenset(c) for c in classes), key=min)
    return ColoringSolution(
        classes=tuple(parts),
        colors_used=len(parts),
        objective=objective,
        vector=encode_partition(parts, ordering),
    )


def _require_alpha_le_2(g: Graph) -> None:
    # alpha(G) <= 2 iff the complement is triangle-free.
    if contains_subgraph(complement(g), "triangle"):
        raise ValueError("graph has a stable set of size 3; matching solver does not apply")


def _lex_min_maximum_matching(
    h: Graph, forced: frozenset[tuple[int, int]], ordering: VertexOrdering
) -> frozenset[tuple[int, int]]:
    """The maximum matching containing ``forced`` whose arc vector is
    lexicographically smallest.

    Greedy over edges in arc order: drop an edge whenever a maximum matching
    avoiding all dropped edges still exists, otherwise it lies in every
    remaining maximum matching and is kept for good.
    """
    target = len(maximum_matching(h, forced=forced))

    def arc_key(edge):
        u, v = edge
        return (u, v) if ordering.precedes(u, v) else (v, u)

    kept = set(forced)
    alive = set(h.edges)
    for edge in sorted(h.edges, key=arc_key):
        if edge in kept:
            continue
        trial = Graph(h.n, frozenset(alive - {edge}))
        if len(maximum_matching(trial, forced=frozenset(kept))) == target:
            alive.discard(edge)
        else:
            kept.add(edge)
    return frozenset(kept)


def _classes_from_matching(n: int, matching) -> list[frozenset[int]]:
    matched = set()
    classes = [frozenset(e) for e in sorted(matching)]
    for u, v in matching:
        matched.update((u, v))
    classes.extend(frozenset({u}) for u in range(n) if u not in matched)
    return classes


def solve_coloring_matching(g: Graph) -> ColoringSolution:
    """Minimum coloring when every stable set has size at most two: matched
    complement edges become the two-element color classes."""
    _require_alpha_le_2(g)
    ordering = ordering_identity(g)
    matching = _lex_min_maximum_matching(complement(g), frozenset(), ordering)
    classes = _classes_from_matching(g.n, matching)
    colors = g.n - len(matching)
    return _solution_from_partition(g, ordering, classes, Fraction(colors))


def solve_precolor_ext_matching(g: Graph, precoloring: Precoloring) -> ColoringSolution:
    """Optimal precoloring extension for graphs with stability at most two.

    Complement edges between distinct precolor classes are deleted, the
    class pairs are forced into the matching, and the rest is a plain
    maximum matching. Validated against exhaustive extension search.
    """
    precoloring.require_proper(g)
    _require_alpha_le_2(g)
    for members in precoloring.classes.values():
        if len(members) >= 3:
            raise InfeasiblePrecoloring(
                "a precolor class of size three cannot be stable here"
            )
    ordering = ordering_consistent(g, precoloring)
    cg = complement(g)

    colors_of = precoloring.mapping
    cross = {
        (u, v)
        for u, v in cg.edges
        if u in colors_of and v in colors_of and colors_of[u] != colors_of[v]
    }
    reduced = Graph(cg.n, cg.edges - cross)

    forced = set()
    for members in precoloring.classes.values():
        if len(members) == 2:
            forced.add(canonical_edge(*sorted(members)))
    matching = _lex_min_maximum_matching(reduced, frozenset(forced), ordering)
    classes = _classes_from_matching(g.n, matching)
    colors = g.n - len(matching)
    return _solution_from_partition(g, ordering, classes, Fraction(colors))


# ---------------------------------------------------------------------------
# Exact solver on the representation graph


def _weight_sum(weights, mask: int) -> Fraction:
    total = Fraction(0)
    i = 0
    while mask:
        if mask & 1:
            total += weights[i]
        mask >>= 1
        i += 1
    return total


def _max_weight_stable_value(
    adj, weights, candidates: int, order
) -> Fraction:
    """Maximum total weight of a stable subset of ``candidates``."""

    def rec(cand: int, current: Fraction, best: Fraction) -> Fraction:
        if cand == 0:
            return max(best, current)
        if current + _weight_sum(weights, cand) <= best:
            return best
        for v in order:
            if (cand >> v) & 1:
                break
        else:  # pragma: no cover
            return max(best, current)
        bit = 1 << v
        best = rec(cand & ~adj[v] & ~bit, current + weights[v], best)
        best = rec(cand & ~bit, current, best)
        return best

    return rec(candidates, Fraction(0), Fraction(0))


def _lex_min_optimal_stable_set(adj, weights, m: int, fixed_in: int, fixed_out: int) -> int:
    """Lexicographically smallest maximum-weight stable set respecting the
    initial fixings, as a bitmask over 0..m-1."""
    order = sorted(range(m), key=lambda v: (-weights[v], v))

    def value(in_mask: int, out_mask: int) -> Fraction:
        blocked = out_mask
        base = Fraction(0)
        rest = in_mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            if adj[v] & in_mask:
                raise InfeasiblePrecoloring("conflicting forced arcs")
            blocked |= adj[v]
            base += weights[v]
            rest &= rest - 1
        candidates = ((1 << m) - 1) & ~blocked & ~in_mask
        return base + _max_weight_stable_value(adj, weights, candidates, order)

    best = value(fixed_in, fixed_out)
    for v in range(m):
        bit = 1 << v
        if (fixed_in | fixed_out) & bit:
            continue
        if value(fixed_in, fixed_out | bit) == best:
            fixed_out |= bit
        else:
            fixed_in |= bit
    return fixed_in


def solve_exact(
    g: Graph,
    ordering: VertexOrdering,
    problem: str = "coloring",
    weights: Optional[Mapping[int, Fraction]] = None,
    precoloring: Optional[Precoloring] = None,
) -> ColoringSolution:
    """Exact solver for all three problems via maximum-weight stable sets on
    the representation graph; small instances only."""
    if problem not in ("coloring", "max_coloring", "precolor_ext"):
        raise ValueError(f"unknown problem {problem!r}")
    r = build_rep(g, ordering)
    if r.n_arcs > ARC_ENUMERATION_CAP:
        raise CapExceeded(f"exact solver: {r.n_arcs} arcs exceed cap")

    if problem == "max_coloring":
        if weights is None:
            raise ValueError("max_coloring requires weights")
        if ordering != ordering_by_weight(g, weights):
            raise ValueError("max_coloring requires the by-weight ordering")
        arc_weights = [Fraction(weights[arc.head]) for arc in r.arcs]
    else:
        arc_weights = [Fraction(1)] * r.n_arcs

    fixed_in = 0
    fixed_out = 0
    if problem == "precolor_ext":
        if precoloring is None:
            raise ValueError("precolor_ext requires a precoloring")
        model = build_model(
            g, ordering, "compact", "precolor_ext", precoloring=precoloring
        )
        for var, val in model.fixings.items():
            idx = r.arc_index[Arc(*var)]
            if val:
                fixed_in |= 1 << idx
            else:
                fixed_out |= 1 << idx

    chosen = _lex_min_optimal_stable_set(r.adj, arc_weights, r.n_arcs, fixed_in, fixed_out)
    support = frozenset(r.arcs[i] for i in range(r.n_arcs) if (chosen >> i) & 1)
    classes = decode_support(support, g.n)

    if problem == "max_coloring":
        assert weights is not None
        objective = sum(
            (max(Fraction(weights[v]) for v in part) for part in classes), Fraction(0)
        )
    else:
        objective = Fraction(g.n - len(support))
    return _solution_from_partition(g, ordering, classes, objective)
