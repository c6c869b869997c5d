"""Exact polyhedral laboratory for the representatives coloring formulation."""

from .graphs import (
    CapExceeded,
    Graph,
    ParseError,
    Precoloring,
    VertexOrdering,
    chromatic_number,
    complement,
    contains_subgraph,
    maximum_matching,
    stability_number,
)
from .repgraph import Arc, RepGraph, build_rep
from .model import LinearInequality, ModelSpec, build_model, export_lp
from .lab import enumerate_colorings, enumerate_stable_sets, verify_coltostab
from .solvers import (
    ColoringSolution,
    InfeasiblePrecoloring,
    solve_coloring_matching,
    solve_exact,
    solve_precolor_ext_matching,
)

__all__ = [
    "Arc",
    "CapExceeded",
    "ColoringSolution",
    "Graph",
    "InfeasiblePrecoloring",
    "LinearInequality",
    "ModelSpec",
    "ParseError",
    "Precoloring",
    "RepGraph",
    "VertexOrdering",
    "build_model",
    "build_rep",
    "chromatic_number",
    "complement",
    "contains_subgraph",
    "enumerate_colorings",
    "enumerate_stable_sets",
    "export_lp",
    "maximum_matching",
    "solve_coloring_matching",
    "solve_exact",
    "solve_precolor_ext_matching",
    "stability_number",
    "verify_coltostab",
]

__version__ = "0.1.0"
