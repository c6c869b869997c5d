"""Inequality families for the coloring polytope and a brute-force separator.

Three families live here: the classical matching system (degree rows, odd
set rows, nonnegativity), the internal inequalities bounding represented
arcs inside a vertex subset by |S| minus the subset's chromatic number, and
Oriolo's clique-family inequalities on the representation graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .graphs import (
    Graph,
    VertexOrdering,
    canonical_edge,
    chromatic_number,
    complement,
    induced_subgraph,
    is_2connected,
    is_connected,
    is_hypomatchable,
    lower_nonneighborhood,
    maximal_cliques,
    stability_number,
)
from .model import LinearInequality, Var, build_model, evaluate
from .repgraph import Arc, RepGraph, build_rep

DEFAULT_ODD_SET_CAP = 9
DEFAULT_INTERNAL_CAP = 9
DEFAULT_FAMILY_SIZE_CAP = 6
#: Upper bound on clique families inspected per separation call; beyond it
#: the search is truncated and reported as not exhausted.
FAMILY_BUDGET = 200_000


def matching_system(h: Graph, odd_set_cap: int = DEFAULT_ODD_SET_CAP) -> list[LinearInequality]:
    """Degree, odd-set and nonnegativity rows over the edges of h.

    Odd-set rows are generated for every odd subset with 3 <= |S| <=
    odd_set_cap; with a cap of at least n(h) the system is the full
    classical description of the matching polytope.
    """
    rows: list[LinearInequality] = []
    for u in range(h.n):
        coeffs = {
            canonical_edge(u, v): Fraction(1) for v in h.neighbors(u)
        }
        rows.append(LinearInequality(coeffs, "<=", Fraction(1), "clique"))
    for size in range(3, min(h.n, odd_set_cap) + 1, 2):
        for subset in itertools.combinations(range(h.n), size):
            inside = set(subset)
            coeffs = {
                (u, v): Fraction(1)
                for u, v in h.edges
                if u in inside and v in inside
            }
            rows.append(
                LinearInequality(coeffs, "<=", Fraction(size - 1, 2), "odd-set")
            )
    for u, v in sorted(h.edges):
        rows.append(
            LinearInequality({(u, v): Fraction(-1)}, "<=", Fraction(0), "nonneg")
        )
    return rows


def internal_inequality(
    g: Graph,
    ordering: VertexOrdering,
    subset: Iterable[int],
    chi_cap: int = 24,
) -> LinearInequality:
    """Sum of represented arcs inside the subset, bounded by |S| minus the
    exact chromatic number of the induced subgraph."""
    s = sorted(set(subset))
    for u in s:
        g.check_vertex(u)
    inside = set(s)
    coeffs: dict[Var, Fraction] = {}
    for u in s:
        for w in lower_nonneighborhood(g, ordering, u):
            if w in inside:
                coeffs[(w, u)] = Fraction(1)
    chi = chromatic_number(induced_subgraph(g, s), cap=chi_cap)
    return LinearInequality(coeffs, "<=", Fraction(len(s) - chi), "internal")


def _is_odd_hole(h: Graph) -> bool:
    # A connected 2-regular graph is a single cycle, and an induced cycle
    # has no chords by definition of 2-regularity.
    return (
        h.n >= 5
        and h.n % 2 == 1
        and len(h.edges) == h.n
        and all(h.degree(u) == 2 for u in range(h.n))
        and is_connected(h)
    )


def internal_facet_sufficient(g: Graph, subset: Iterable[int]) -> Optional[str]:
    """Which sufficient facet condition the subset meets, if any.

    Checked in order: the induced subgraph is an odd hole; its complement
    is; or it has stability at most 2 with a 2-connected hypomatchable
    complement. Returns the first matching tag or None.
    """
    sub = induced_subgraph(g, subset)
    if _is_odd_hole(sub):
        return "odd_hole"
    co = complement(sub)
    if _is_odd_hole(co):
        return "odd_antihole"
    if stability_number(sub) <= 2 and is_2connected(co) and is_hypomatchable(co):
        return "alpha2_hypomatchable"
    return None


def clique_family_parts(
    n_vertices: int, family: Sequence[frozenset[int]], p: int
) -> tuple[frozenset[int], frozenset[int], Fraction, Fraction, Fraction]:
    """Coefficient data for a clique-family inequality over raw vertex ids.

    With t cliques and remainder r = t mod p, vertices covered exactly p-1
    times get coefficient p-r-1, vertices covered at least p times get
    p-r, and the right-hand side is (p-r) * floor(t/p).
    """
    t = len(family)
    if not (1 <= p <= t):
        raise ValueError(f"p={p} out of range 1..{t}")
    coverage = [0] * n_vertices
    for clique in family:
        for v in clique:
            coverage[v] += 1
    r = t % p
    exactly = frozenset(v for v in range(n_vertices) if coverage[v] == p - 1)
    at_least = frozenset(v for v in range(n_vertices) if coverage[v] >= p)
    return exactly, at_least, Fraction(p - r - 1), Fraction(p - r), Fraction((p - r) * (t // p))


def clique_family_inequality(
    r: RepGraph, family: Sequence[frozenset[int]], p: int
) -> LinearInequality:
    """Clique-family inequality over the arcs of a representation graph."""
    adj = r.adj
    for clique in family:
        for i, j in itertools.combinations(sorted(clique), 2):
            if not (adj[i] >> j) & 1:
                raise ValueError(f"family member {sorted(clique)} is not a clique")
    exactly, at_least, c_lo, c_hi, rhs = clique_family_parts(r.n_arcs, family, p)
    coeffs: dict[Var, Fraction] = {}
    for i in exactly:
        if c_lo != 0:
            coeffs[r.arcs[i]] = c_lo
    for i in at_least:
        coeffs[r.arcs[i]] = c_hi
    return LinearInequality(coeffs, "<=", rhs, "clique-family")


def check_validity(
    ineq: LinearInequality, vertex_list: Iterable[Mapping[Var, Fraction]]
) -> bool:
    """True iff every listed vertex satisfies the inequality."""
    return all(evaluate(ineq, point)[1] for point in vertex_list)


# ---------------------------------------------------------------------------
# Brute-force separation


@dataclass(frozen=True)
class SeparationResult:
    inequality: Optional[LinearInequality]
    exhausted: bool


@dataclass(frozen=True)
class SeparationCaps:
    odd_set: int = DEFAULT_ODD_SET_CAP
    internal: int = DEFAULT_INTERNAL_CAP
    clique_family: int = DEFAULT_FAMILY_SIZE_CAP


ALL_FAMILIES = ("model", "odd-set", "internal", "clique-family")


def _most_violated(
    candidates: Iterable[LinearInequality], point: Mapping[Var, Fraction]
) -> Optional[LinearInequality]:
    best = None
    best_gap = Fraction(0)
    for ineq in candidates:
        lhs, ok = evaluate(ineq, point)
        if ok:
            continue
        gap = lhs - ineq.rhs if ineq.sense == "<=" else ineq.rhs - lhs
        if best is None or gap > best_gap:
            best, best_gap = ineq, gap
    return best


def separate_bruteforce(
    g: Graph,
    ordering: VertexOrdering,
    point: Mapping[Var, Fraction],
    families: Sequence[str] = ALL_FAMILIES,
    caps: SeparationCaps = SeparationCaps(),
) -> SeparationResult:
    """Search the families in a fixed order and return the most violated
    inequality of the first family containing a violation.

    Truncated searches (caps smaller than the instance) are not errors;
    the result carries exhausted=False so the caller can tell "no cut
    found" from "no cut found within the caps".
    """
    exhausted = True
    cg = complement(g)

    if "model" in families:
        rows = build_model(g, ordering, "compact", "coloring").constraints
        hit = _most_violated(rows, point)
        if hit is not None:
            return SeparationResult(hit, True)

    if "odd-set" in families:
        if cg.n > caps.odd_set:
            exhausted = False
        candidates = []
        for size in range(3, min(cg.n, caps.odd_set) + 1, 2):
            for subset in itertools.combinations(range(cg.n), size):
                inside = set(subset)
                coeffs = {}
                for u, v in cg.edges:
                    if u in inside and v in inside:
                        arc = (u, v) if ordering.precedes(u, v) else (v, u)
                        coeffs[arc] = Fraction(1)
                candidates.append(
                    LinearInequality(coeffs, "<=", Fraction(size - 1, 2), "odd-set")
                )
        hit = _most_violated(candidates, point)
        if hit is not None:
            return SeparationResult(hit, exhausted)

    if "internal" in families:
        if g.n > caps.internal:
            exhausted = False
        candidates = []
        for size in range(2, min(g.n, caps.internal) + 1):
            for subset in itertools.combinations(range(g.n), size):
                candidates.append(internal_inequality(g, ordering, subset))
        hit = _most_violated(candidates, point)
        if hit is not None:
            return SeparationResult(hit, exhausted)

    if "clique-family" in families:
        r = build_rep(g, ordering)
        cliques = maximal_cliques(r.as_graph())
        candidates = []
        budget = FAMILY_BUDGET
        for size in range(1, caps.clique_family + 1):
            if size > len(cliques):
                break
            for family in itertools.combinations(cliques, size):
                budget -= 1
                if budget < 0:
                    exhausted = False
                    break
                for p in range(1, size + 1):
                    candidates.append(clique_family_inequality(r, family, p))
            if budget < 0:
                break
        if len(cliques) > caps.clique_family:
            exhausted = False
        hit = _most_violated(candidates, point)
        if hit is not None:
            return SeparationResult(hit, exhausted)

    return SeparationResult(None, exhausted)
