"""Deterministic desk-scale graph corpora.

Generation works by walking all labeled graphs in mask order and claiming
whole isomorphism orbits, so the returned representative of each class is
the lexicographically smallest labeled copy and the output order is stable
across runs.
"""

from __future__ import annotations

import itertools

from .graphs import Graph, canonical_edge, complement, is_connected

GENERATION_CAP = 7


def generate_graphs(n: int, connected_only: bool = True) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, in canonical mask order."""
    if n > GENERATION_CAP:
        raise ValueError(f"corpus generation capped at n={GENERATION_CAP}")
    if n == 0:
        return [Graph(0, frozenset())]
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    tables = []
    for perm in itertools.permutations(range(n)):
        tables.append(
            tuple(index[canonical_edge(perm[u], perm[v])] for u, v in pairs)
        )
    m = len(pairs)
    seen = bytearray(1 << max(0, m - 3)) if m >= 3 else bytearray(1)
    out = []
    for mask in range(1 << m):
        if seen[mask >> 3] & (1 << (mask & 7)):
            continue
        for table in tables:
            image = 0
            rest = mask
            while rest:
                low = rest & -rest
                image |= 1 << table[low.bit_length() - 1]
                rest ^= low
            seen[image >> 3] |= 1 << (image & 7)
        g = Graph.from_edges(n, [pairs[i] for i in range(m) if (mask >> i) & 1])
        if connected_only and not is_connected(g):
            continue
        out.append(g)
    return out


def connected_graphs_up_to(n: int) -> list[Graph]:
    out = []
    for k in range(1, n + 1):
        out.extend(generate_graphs(k, connected_only=True))
    return out


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def named_instances() -> dict[str, Graph]:
    """Named graphs used throughout testing and verification runs."""
    paw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    kite = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    named = {
        "p3": _path(3),
        "p4": _path(4),
        "c4": _cycle(4),
        "c5": _cycle(5),
        "c7": _cycle(7),
        "k3": _complete(3),
        "k4": _complete(4),
        "paw": paw,
        "diamond": diamond,
        "kite": kite,
        "claw": claw,
        "petersen": _petersen(),
        "stable3": Graph(3, frozenset()),
    }
    for base in ("c5", "c7", "paw", "kite", "claw", "petersen"):
        named[f"co_{base}"] = complement(named[base])
    return named
