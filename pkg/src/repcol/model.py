"""Linear models over representation variables, and LP-format export.

Variables are keyed by vertex pairs: an arc (u, v) is the off-diagonal
variable "u stands for v", and (u, u) is the diagonal variable of the
original (non-compact) model. All coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Optional

from .graphs import (
    Graph,
    Precoloring,
    VertexOrdering,
    is_consistent,
    lower_nonneighborhood,
    maximal_cliques,
    ordering_by_weight,
    rep_of,
    upper_nonneighborhood,
)
from .repgraph import Arc, arcs_of

Var = tuple[int, int]

FAMILIES = (
    "representation",
    "clique",
    "odd-set",
    "internal",
    "clique-family",
    "fixing",
    "nonneg",
    "custom",
)

PROBLEMS = ("coloring", "max_coloring", "precolor_ext")


@dataclass(frozen=True)
class LinearInequality:
    """A linear constraint with exact rational coefficients."""

    coeffs: dict[Var, Fraction]
    sense: str  # "<=", "=", ">="
    rhs: Fraction
    family: str = "custom"

    def __post_init__(self):
        if self.sense not in ("<=", "=", ">="):
            raise ValueError(f"bad sense {self.sense!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"bad family {self.family!r}")

    def support(self) -> frozenset[Var]:
        return frozenset(v for v, c in self.coeffs.items() if c != 0)

    def __eq__(self, other):
        if not isinstance(other, LinearInequality):
            return NotImplemented
        return (
            {v: c for v, c in self.coeffs.items() if c != 0}
            == {v: c for v, c in other.coeffs.items() if c != 0}
            and self.sense == other.sense
            and self.rhs == other.rhs
            and self.family == other.family
        )


def evaluate(ineq: LinearInequality, point: Mapping[Var, Fraction]) -> tuple[Fraction, bool]:
    """Exact left-hand side and satisfaction of the inequality at a point."""
    lhs = Fraction(0)
    for var, coeff in ineq.coeffs.items():
        if coeff == 0:
            continue
        if var not in point:
            raise ValueError(f"point is missing coordinate {var}")
        lhs += coeff * point[var]
    if ineq.sense == "<=":
        return lhs, lhs <= ineq.rhs
    if ineq.sense == ">=":
        return lhs, lhs >= ineq.rhs
    return lhs, lhs == ineq.rhs


def evaluate_support(ineq: LinearInequality, support: Iterable[Var]) -> tuple[Fraction, bool]:
    """Evaluate at the 0/1 point whose set of one-coordinates is ``support``."""
    chosen = set(support)
    lhs = sum((c for v, c in ineq.coeffs.items() if v in chosen), Fraction(0))
    if ineq.sense == "<=":
        return lhs, lhs <= ineq.rhs
    if ineq.sense == ">=":
        return lhs, lhs >= ineq.rhs
    return lhs, lhs == ineq.rhs


def relabel_inequality(
    ineq: LinearInequality, var_map: Mapping[Var, Var]
) -> LinearInequality:
    """Rewrite an inequality through a variable renaming."""
    return LinearInequality(
        {var_map[v]: c for v, c in ineq.coeffs.items()},
        ineq.sense,
        ineq.rhs,
        ineq.family,
    )


@dataclass(frozen=True)
class ModelSpec:
    """A built model: variables, objective, rows and 0/1 fixings."""

    variant: str  # "original" | "compact"
    variables: tuple[Var, ...]
    objective_sense: str
    objective: dict[Var, Fraction]
    objective_offset: Fraction
    constraints: tuple[LinearInequality, ...]
    fixings: dict[Var, int] = field(default_factory=dict)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(Arc(u, v) for u, v in self.variables if u != v)


def _clique_rows(g: Graph, ordering: VertexOrdering, u: int, variant: str):
    """Rows for vertex u: lower sum plus one maximal clique of upper non-neighbors."""
    lower = sorted(lower_nonneighborhood(g, ordering, u))
    upper = upper_nonneighborhood(g, ordering, u)
    rows = []
    if not upper:
        if variant == "compact":
            coeffs = {(w, u): Fraction(1) for w in lower}
            rows.append(LinearInequality(coeffs, "<=", Fraction(1), "clique"))
        else:
            rows.append(
                LinearInequality({(u, u): Fraction(-1)}, "<=", Fraction(0), "nonneg")
            )
        return rows
    for clique in maximal_cliques(g, within=upper):
        if variant == "compact":
            coeffs = {(w, u): Fraction(1) for w in lower}
            for k in sorted(clique):
                coeffs[(u, k)] = Fraction(1)
            rows.append(LinearInequality(coeffs, "<=", Fraction(1), "clique"))
        else:
            coeffs = {(u, k): Fraction(1) for k in sorted(clique)}
            coeffs[(u, u)] = Fraction(-1)
            rows.append(LinearInequality(coeffs, "<=", Fraction(0), "clique"))
    return rows


def _precoloring_fixings(
    g: Graph, ordering: VertexOrdering, precoloring: Precoloring
) -> dict[Var, int]:
    """Representation fixings for precolored vertices, zeros made explicit.

    For a precolored v with class leader r != v the arc (r, v) is set and
    every other in-arc of v is cleared; when v leads its own class, every
    in-arc of v is cleared (the arc-space translation of "v stands for
    itself", which the equality rows force in the original variable space).
    """
    fixings: dict[Var, int] = {}
    for v in sorted(precoloring.domain):
        r = rep_of(v, precoloring, ordering)
        if r != v:
            assert not g.has_edge(r, v), "leader adjacent to member in a proper class"
        for w in sorted(lower_nonneighborhood(g, ordering, v)):
            fixings[(w, v)] = 1 if w == r else 0
    return fixings


def build_model(
    g: Graph,
    ordering: VertexOrdering,
    variant: str = "compact",
    problem: str = "coloring",
    weights: Optional[Mapping[int, Fraction]] = None,
    precoloring: Optional[Precoloring] = None,
) -> ModelSpec:
    """Instantiate the representatives model for one of the three problems.

    Rows are generated per vertex over the maximal cliques of its upper
    non-neighborhood; these dominate the rows of all clique subsets on 0/1
    points. Vertices with no upper non-neighbor get the empty-clique row
    (compact) or the diagonal lower bound (original).
    """
    if variant not in ("original", "compact"):
        raise ValueError(f"unknown variant {variant!r}")
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if ordering.n != g.n:
        raise ValueError("ordering size does not match graph")

    if problem == "max_coloring":
        if weights is None:
            raise ValueError("max_coloring requires weights")
        if ordering != ordering_by_weight(g, weights):
            raise ValueError("max_coloring requires the by-weight ordering")
    if problem == "precolor_ext":
        if precoloring is None:
            raise ValueError("precolor_ext requires a precoloring")
        precoloring.require_proper(g)
        if not is_consistent(ordering, precoloring):
            raise ValueError("ordering is not consistent with the precoloring")

    arcs = arcs_of(g, ordering)
    if variant == "compact":
        variables: tuple[Var, ...] = tuple(arcs)
    else:
        variables = tuple(sorted([(u, u) for u in range(g.n)] + list(arcs)))

    constraints: list[LinearInequality] = []
    if variant == "original":
        for u in range(g.n):
            coeffs = {(u, u): Fraction(1)}
            for w in sorted(lower_nonneighborhood(g, ordering, u)):
                coeffs[(w, u)] = Fraction(1)
            constraints.append(
                LinearInequality(coeffs, "=", Fraction(1), "representation")
            )
    for u in range(g.n):
        constraints.extend(_clique_rows(g, ordering, u, variant))

    if problem == "max_coloring":
        assert weights is not None
        objective = {arc: Fraction(weights[arc.head]) for arc in arcs}
        offset = -sum((Fraction(weights[u]) for u in range(g.n)), Fraction(0))
    else:
        objective = {arc: Fraction(1) for arc in arcs}
        offset = Fraction(-g.n)

    fixings: dict[Var, int] = {}
    if problem == "precolor_ext":
        assert precoloring is not None
        fixings = _precoloring_fixings(g, ordering, precoloring)

    return ModelSpec(
        variant=variant,
        variables=variables,
        objective_sense="max",
        objective=objective,
        objective_offset=offset,
        constraints=tuple(constraints),
        fixings=fixings,
    )


def check_point(m: ModelSpec, point: Mapping[Var, Fraction]) -> bool:
    """All rows and all fixings hold at the point."""
    for ineq in m.constraints:
        if not evaluate(ineq, point)[1]:
            return False
    for var, value in m.fixings.items():
        if var not in point:
            raise ValueError(f"point is missing coordinate {var}")
        if point[var] != value:
            return False
    return True


# ---------------------------------------------------------------------------
# LP-format export


def _var_name(var: Var) -> str:
    return f"x_{var[0] + 1}_{var[1] + 1}"


def _is_decimal_exact(x: Fraction) -> bool:
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def _decimal_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    k = 0
    d = x.denominator
    while d % 2 == 0:
        d //= 2
        k += 1
    m = 0
    while d % 5 == 0:
        d //= 5
        m += 1
    digits = max(k, m)
    scaled = x * 10**digits
    assert scaled.denominator == 1
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    sign = "-" if scaled.numerator < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _term_list(coeffs: Mapping[Var, Fraction]) -> str:
    parts = []
    for var in sorted(v for v, c in coeffs.items() if c != 0):
        c = coeffs[var]
        mag = abs(c)
        coef = "" if mag == 1 else f"{_decimal_str(mag)} "
        if not parts:
            sign = "- " if c < 0 else ""
        else:
            sign = "- " if c < 0 else "+ "
        parts.append(f"{sign}{coef}{_var_name(var)}")
    return " ".join(parts)


def _scaled_row(coeffs: dict[Var, Fraction], rhs: Fraction) -> tuple[dict[Var, Fraction], Fraction, int]:
    """Scale a row by the denominator lcm when it is not exactly printable."""
    values = [c for c in coeffs.values() if c != 0] + [rhs]
    if all(_is_decimal_exact(v) for v in values):
        return coeffs, rhs, 1
    scale = lcm(*(v.denominator for v in values))
    return (
        {v: c * scale for v, c in coeffs.items()},
        rhs * scale,
        scale,
    )


def export_lp(m: ModelSpec) -> str:
    """CPLEX LP text: objective (offset in a comment), rows, fixing bounds,
    binary section. Deterministic; rows with inexact decimals are scaled by
    the lcm of their denominators, which preserves the row."""
    lines = [f"\\ objective offset {m.objective_offset}"]
    obj_coeffs, _, obj_scale = _scaled_row(dict(m.objective), Fraction(0))
    if obj_scale != 1:
        lines.append(f"\\ objective scaled by {obj_scale}")
    lines.append("Maximize" if m.objective_sense == "max" else "Minimize")
    terms = _term_list(obj_coeffs)
    lines.append(f" obj: {terms}" if terms else " obj:")
    lines.append("Subject To")
    sense_text = {"<=": "<=", ">=": ">=", "=": "="}
    for idx, ineq in enumerate(m.constraints, start=1):
        coeffs, rhs, _ = _scaled_row(ineq.coeffs, ineq.rhs)
        terms = _term_list(coeffs)
        if not terms:
            continue
        lines.append(f" c{idx}: {terms} {sense_text[ineq.sense]} {_decimal_str(rhs)}")
    lines.append("Bounds")
    for var in sorted(m.fixings):
        lines.append(f" {_var_name(var)} = {m.fixings[var]}")
    lines.append("Binary")
    for var in m.variables:
        lines.append(f" {_var_name(var)}")
    lines.append("End")
    return "\n".join(lines) + "\n"
