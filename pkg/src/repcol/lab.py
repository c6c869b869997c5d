"""Exact enumeration oracles and polyhedral verification.

Colorings are encoded as 0/1 vectors over the arcs: a partition class is
written as arcs from its ordering-minimum member to every other member.
All enumerations return supports (sets of arcs), which is the exact and
cheap representation of 0/1 points; everything downstream is exact
rational arithmetic, never floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .exactlp import exact_rank, lp_box_maximize, polytope_vertices
from .graphs import (
    CapExceeded,
    Graph,
    Precoloring,
    VertexOrdering,
    complement,
    is_consistent,
)
from .ineq import check_validity  # noqa: F401  (re-exported for callers)
from .model import LinearInequality, ModelSpec, Var, build_model, evaluate_support
from .repgraph import Arc, RepGraph, arcs_of, build_rep

ARC_ENUMERATION_CAP = 20
VERTEX_ENUMERATION_CAP = 8
HULL_ARC_CAP = 12
DEFAULT_PROBE_COUNT = 200

Support = frozenset[Arc]


@dataclass(frozen=True)
class VertexSetEnumeration:
    points: frozenset[Support]
    source: str  # "colorings" | "stable_sets" | "system_integral_points"


def support_point(support: Iterable[Var], variables: Iterable[Var]) -> dict[Var, Fraction]:
    """Expand a support set into a full 0/1 coordinate map."""
    chosen = set(support)
    return {v: Fraction(1 if v in chosen else 0) for v in variables}


def _check_enumeration_cap(g: Graph) -> None:
    n_arcs = g.n * (g.n - 1) // 2 - len(g.edges)
    if n_arcs > ARC_ENUMERATION_CAP and g.n > VERTEX_ENUMERATION_CAP:
        raise CapExceeded(
            f"enumeration: {n_arcs} arcs and n={g.n} exceed caps "
            f"({ARC_ENUMERATION_CAP} arcs / n={VERTEX_ENUMERATION_CAP})"
        )


def _stable_partitions(g: Graph, precoloring: Optional[Precoloring]):
    """Yield all partitions of the vertices into stable sets, respecting the
    precoloring when given: each precolor class stays whole, and distinct
    classes stay apart."""
    colors = precoloring.mapping if precoloring is not None else {}
    adj = g.adj
    parts: list[list[int]] = []
    masks: list[int] = []
    tags: list[Optional[int]] = []
    class_part: dict[int, int] = {}

    def rec(v: int):
        if v == g.n:
            yield [tuple(p) for p in parts]
            return
        tag = colors.get(v)
        if tag is not None and tag in class_part:
            i = class_part[tag]
            if masks[i] & adj[v] == 0:
                parts[i].append(v)
                masks[i] |= 1 << v
                yield from rec(v + 1)
                parts[i].pop()
                masks[i] &= ~(1 << v)
            return
        for i in range(len(parts)):
            if masks[i] & adj[v]:
                continue
            if tag is not None and tags[i] is not None:
                continue
            parts[i].append(v)
            masks[i] |= 1 << v
            old_tag = tags[i]
            if tag is not None:
                tags[i] = tag
                class_part[tag] = i
            yield from rec(v + 1)
            if tag is not None:
                tags[i] = old_tag
                del class_part[tag]
            parts[i].pop()
            masks[i] &= ~(1 << v)
        parts.append([v])
        masks.append(1 << v)
        tags.append(tag)
        if tag is not None:
            class_part[tag] = len(parts) - 1
        yield from rec(v + 1)
        if tag is not None:
            del class_part[tag]
        parts.pop()
        masks.pop()
        tags.pop()

    yield from rec(0)


def encode_partition(partition: Iterable[Iterable[int]], ordering: VertexOrdering) -> Support:
    """Canonical arc support of a partition: each class is represented by
    its ordering-minimum member."""
    support = set()
    for part in partition:
        members = sorted(part, key=ordering.rank.__getitem__)
        rep = members[0]
        for v in members[1:]:
            support.add(Arc(rep, v))
    return frozenset(support)


def decode_support(support: Iterable[Arc], n: int) -> list[frozenset[int]]:
    """Partition classes of a coloring support; inverse of encode_partition."""
    lead: dict[int, set[int]] = {}
    head_of: dict[int, int] = {}
    for arc in support:
        head_of[arc.head] = arc.tail
    for v in range(n):
        if v not in head_of:
            lead[v] = {v}
    for head, tail in head_of.items():
        lead[tail].add(head)
    return sorted((frozenset(c) for c in lead.values()), key=min)


def enumerate_colorings(
    g: Graph,
    ordering: VertexOrdering,
    precoloring: Optional[Precoloring] = None,
) -> VertexSetEnumeration:
    """All 0/1 coloring vectors, one per partition into stable sets."""
    _check_enumeration_cap(g)
    if precoloring is not None:
        precoloring.require_proper(g)
    points = frozenset(
        encode_partition(p, ordering) for p in _stable_partitions(g, precoloring)
    )
    return VertexSetEnumeration(points, "colorings")


def enumerate_stable_sets(r: RepGraph) -> VertexSetEnumeration:
    """All 0/1 stable-set vectors of a representation graph."""
    if r.n_arcs > ARC_ENUMERATION_CAP:
        raise CapExceeded(f"stable set enumeration: {r.n_arcs} arcs exceed cap")
    adj = r.adj
    points: set[Support] = set()

    def rec(i: int, chosen_mask: int, chosen: tuple):
        if i == r.n_arcs:
            points.add(frozenset(chosen))
            return
        rec(i + 1, chosen_mask, chosen)
        if adj[i] & chosen_mask == 0:
            rec(i + 1, chosen_mask | (1 << i), chosen + (r.arcs[i],))

    rec(0, 0, ())
    return VertexSetEnumeration(frozenset(points), "stable_sets")


def verify_coltostab(g: Graph, ordering: VertexOrdering) -> bool:
    """Coloring vectors coincide with the stable-set vectors of the
    representation graph, as sets."""
    colorings = enumerate_colorings(g, ordering).points
    stables = enumerate_stable_sets(build_rep(g, ordering)).points
    return colorings == stables


def verify_preext_identity(
    g: Graph, precoloring: Precoloring, ordering: VertexOrdering
) -> bool:
    """Constrained enumeration equals unconstrained enumeration filtered by
    the model's precoloring fixings."""
    if not is_consistent(ordering, precoloring):
        raise ValueError("ordering is not consistent with the precoloring")
    constrained = enumerate_colorings(g, ordering, precoloring).points
    fixings = build_model(
        g, ordering, "compact", "precolor_ext", precoloring=precoloring
    ).fixings
    filtered = frozenset(
        sup
        for sup in enumerate_colorings(g, ordering).points
        if all((var in sup) == bool(val) for var, val in fixings.items())
    )
    return constrained == filtered


def affine_dimension(points: Sequence[Mapping[Var, Fraction]]) -> int:
    """Dimension of the affine hull; missing coordinates count as zero."""
    if not points:
        raise ValueError("affine_dimension of an empty point set")
    variables = sorted({v for p in points for v in p})
    base = [Fraction(points[0].get(v, 0)) for v in variables]
    diffs = [
        [Fraction(p.get(v, 0)) - b for v, b in zip(variables, base)]
        for p in points[1:]
    ]
    if not diffs:
        return 0
    return exact_rank(diffs)


def _supports_as_points(supports: Iterable[Support]) -> list[dict[Var, Fraction]]:
    return [{arc: Fraction(1) for arc in sup} for sup in supports]


def is_facet(ineq: LinearInequality, g: Graph, ordering: VertexOrdering) -> bool:
    """Valid, and tight on an affine subspace of dimension exactly one less
    than the whole vertex set's. An inequality with no tight vertex is not
    a facet (it supports no face)."""
    supports = enumerate_colorings(g, ordering).points
    arcs = arcs_of(g, ordering)
    tight = []
    for sup in supports:
        lhs, ok = evaluate_support(ineq, sup)
        if not ok:
            return False
        if lhs == ineq.rhs:
            tight.append(sup)
    if not tight:
        return False
    all_points = [support_point(s, arcs) for s in supports]
    tight_points = [support_point(s, arcs) for s in tight]
    return affine_dimension(tight_points) == affine_dimension(all_points) - 1


def enumerate_matchings(h: Graph) -> list[frozenset[tuple[int, int]]]:
    """Every matching of h, including the empty one."""
    edges = sorted(h.edges)
    out: list[frozenset[tuple[int, int]]] = []

    def rec(i: int, used: int, chosen: tuple):
        if i == len(edges):
            out.append(frozenset(chosen))
            return
        rec(i + 1, used, chosen)
        u, v = edges[i]
        bits = (1 << u) | (1 << v)
        if used & bits == 0:
            rec(i + 1, used | bits, chosen + (edges[i],))

    rec(0, 0, ())
    return out


def verify_match_subset(g: Graph, ordering: VertexOrdering) -> bool:
    """Every matching of the complement is a coloring vector and satisfies
    every row of the compact model."""
    colorings = enumerate_colorings(g, ordering).points
    rows = build_model(g, ordering, "compact", "coloring").constraints
    cg = complement(g)
    for matching in enumerate_matchings(cg):
        support = frozenset(
            Arc(u, v) if ordering.precedes(u, v) else Arc(v, u) for u, v in matching
        )
        if support not in colorings:
            return False
        if not all(evaluate_support(row, support)[1] for row in rows):
            return False
    return True


# ---------------------------------------------------------------------------
# Complete-characterization checks


def _dense_rows(
    system: Iterable[LinearInequality], variables: Sequence[Var]
) -> list[tuple[list[Fraction], Fraction]]:
    """Dense <=-form rows over the variable order; equalities split in two."""
    index = {v: i for i, v in enumerate(variables)}
    rows: list[tuple[list[Fraction], Fraction]] = []
    for ineq in system:
        dense = [Fraction(0)] * len(variables)
        for var, coeff in ineq.coeffs.items():
            if coeff == 0:
                continue
            if var not in index:
                raise ValueError(f"system variable {var} is not an arc of the model")
            dense[index[var]] = Fraction(coeff)
        if ineq.sense in ("<=", "="):
            rows.append((dense, Fraction(ineq.rhs)))
        if ineq.sense in (">=", "="):
            rows.append(([-c for c in dense], -Fraction(ineq.rhs)))
    return rows


def seeded_objectives(
    k: int, dimension: int, seed: int
) -> list[tuple[Fraction, ...]]:
    """Deterministic pseudo-random rational objectives for the LP probe."""
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        out.append(
            tuple(
                Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                for _ in range(dimension)
            )
        )
    return out


def verify_characterization(
    g: Graph,
    ordering: VertexOrdering,
    system: Sequence[LinearInequality],
    mode: str = "lp_objective_probe",
    k: int = DEFAULT_PROBE_COUNT,
    seed: int = 0,
    hull_arc_cap: int = HULL_ARC_CAP,
) -> bool:
    """Does the row system describe exactly the convex hull of the coloring
    vectors?

    lp_objective_probe maximizes k seeded rational objectives over the
    system intersected with the unit box and compares each optimum with the
    maximum over the enumerated coloring vectors; it is a falsification
    test, not a proof. hull_compare enumerates the system polytope's
    vertex set exactly and compares it with the coloring vectors.
    """
    arcs = arcs_of(g, ordering)
    supports = enumerate_colorings(g, ordering).points
    for ineq in system:
        for sup in supports:
            if not evaluate_support(ineq, sup)[1]:
                return False
    rows = _dense_rows(system, arcs)

    if mode == "lp_objective_probe":
        index = {arc: i for i, arc in enumerate(arcs)}
        for objective in seeded_objectives(k, len(arcs), seed):
            lp_value, _ = lp_box_maximize(objective, rows, len(arcs))
            best = max(
                sum((objective[index[a]] for a in sup), Fraction(0))
                for sup in supports
            )
            if lp_value != best:
                return False
        return True

    if mode == "hull_compare":
        if len(arcs) > hull_arc_cap:
            raise CapExceeded(
                f"hull_compare: {len(arcs)} arcs exceed cap {hull_arc_cap}"
            )
        box = []
        for i in range(len(arcs)):
            coeffs = [Fraction(0)] * len(arcs)
            coeffs[i] = Fraction(1)
            box.append((coeffs, Fraction(1)))
        vertices = set(polytope_vertices(rows + box, len(arcs)))
        expected = {
            tuple(Fraction(1 if a in sup else 0) for a in arcs) for sup in supports
        }
        return vertices == expected

    raise ValueError(f"unknown verification mode {mode!r}")
