"""JSON codecs for the wire formats: arcs, rationals, inequalities, points,
rep graphs and solutions. Vertex ids are 1-indexed on the wire."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .ineq import LinearInequality
from .model import Var
from .repgraph import Arc, RepGraph
from .solvers import ColoringSolution


def var_key(var: Var) -> str:
    return f"{var[0] + 1},{var[1] + 1}"


def parse_var_key(key: str) -> Var:
    u, v = key.split(",")
    return (int(u) - 1, int(v) - 1)


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def repgraph_to_json(r: RepGraph) -> dict:
    return {
        "arcs": [[a.tail + 1, a.head + 1] for a in r.arcs],
        "edges": sorted([i, j] for i, j in r.edges),
    }


def inequality_to_json(ineq: LinearInequality) -> dict:
    return {
        "family": ineq.family,
        "coeffs": {
            var_key(v): frac_str(c) for v, c in sorted(ineq.coeffs.items()) if c != 0
        },
        "sense": ineq.sense,
        "rhs": frac_str(ineq.rhs),
    }


def inequality_from_json(data: Mapping) -> LinearInequality:
    return LinearInequality(
        {parse_var_key(k): Fraction(v) for k, v in data["coeffs"].items()},
        data["sense"],
        Fraction(data["rhs"]),
        data.get("family", "custom"),
    )


def point_to_json(point: Mapping[Var, Fraction]) -> dict:
    return {var_key(v): frac_str(c) for v, c in sorted(point.items())}


def point_from_json(data: Mapping) -> dict[Var, Fraction]:
    return {parse_var_key(k): Fraction(v) for k, v in data.items()}


def solution_to_json(sol: ColoringSolution) -> dict:
    return {
        "colors_used": sol.colors_used,
        "classes": [sorted(v + 1 for v in part) for part in sol.classes],
        "objective": frac_str(sol.objective),
        "vector": {var_key(a): "1" for a in sorted(sol.vector)},
    }
