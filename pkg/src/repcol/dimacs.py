"""Readers for DIMACS ``.col`` graphs and the sidecar input files.

All on-disk formats are 1-indexed; in-memory vertices are 0-indexed.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import Graph, ParseError, Precoloring, VertexOrdering


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``.col`` syntax: ``p edge n m`` then ``e u v`` lines."""
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                n = int(fields[2])
                int(fields[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
        elif fields[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge {line!r}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex index out of range")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u}")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(f"line {lineno}: unrecognized record {fields[0]!r}")
    if n is None:
        raise ParseError("missing problem line")
    return Graph(n, frozenset(edges))


def format_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_ordering(text: str, n: int) -> VertexOrdering:
    """One line of whitespace-separated 1-indexed ids, leftmost smallest."""
    fields = text.split()
    try:
        seq = [int(f) - 1 for f in fields]
    except ValueError:
        raise ParseError("ordering file: non-integer entry")
    if sorted(seq) != list(range(n)):
        raise ParseError(f"ordering file: not a permutation of 1..{n}")
    return VertexOrdering.from_sequence(seq)


def parse_precoloring(text: str) -> Precoloring:
    """Lines ``v c`` with a 1-indexed vertex and a positive color id."""
    mapping: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 'v c'")
        try:
            v, c = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry")
        if v < 1:
            raise ParseError(f"line {lineno}: vertex index must be positive")
        if c < 1:
            raise ParseError(f"line {lineno}: color must be positive")
        if v - 1 in mapping:
            raise ParseError(f"line {lineno}: vertex {v} precolored twice")
        mapping[v - 1] = c
    return Precoloring.from_mapping(mapping)


def parse_weights(text: str, n: int) -> dict[int, Fraction]:
    """Lines ``v w`` with w a decimal or p/q rational; must cover every vertex."""
    weights: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 'v w'")
        try:
            v = int(fields[0])
            w = Fraction(fields[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: malformed weight entry")
        if not (1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex index out of range")
        if w < 0:
            raise ParseError(f"line {lineno}: negative weight")
        weights[v - 1] = w
    missing = [v + 1 for v in range(n) if v not in weights]
    if missing:
        raise ParseError(f"weights file: missing vertices {missing}")
    return weights
