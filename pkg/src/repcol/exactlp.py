"""Exact rational linear programming and polytope vertex enumeration.

Everything here runs on exact rationals (gmpy2.mpq when available, else
fractions.Fraction); floating point never enters. The two entry points:

* ``lp_box_maximize``: maximize a linear objective over a row system
  intersected with the unit box, via a primal simplex with Bland's rule
  wrapped in an outer most-violated-row loop so only active rows sit in
  the tableau.

* ``polytope_vertices``: exact vertex enumeration by the double
  description method, homogenizing the polytope to a pointed cone and
  inserting rows incrementally with the combinatorial adjacency test.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is normally present
    QQ = Fraction

Row = tuple[Sequence[Fraction], Fraction]


class UnboundedError(RuntimeError):
    """The LP or the polytope is unbounded; callers treat this as a bug."""


def _simplex_maximize(
    objective: list, rows: list[tuple[list, object]], d: int
) -> tuple[object, list]:
    """Primal simplex for max c*x, A x <= b, x >= 0 with b >= 0.

    Bland's rule everywhere, so termination is guaranteed. Returns the
    optimum and one optimal point.
    """
    m = len(rows)
    width = d + m + 1
    tableau: list[list] = []
    zero = QQ(0)
    for i, (coeffs, rhs) in enumerate(rows):
        if rhs < 0:
            raise ValueError("row with negative right-hand side; origin infeasible")
        row = [QQ(c) for c in coeffs] + [zero] * m + [QQ(rhs)]
        row[d + i] = QQ(1)
        tableau.append(row)
    zrow = [-QQ(c) for c in objective] + [zero] * (m + 1)
    basis = [d + i for i in range(m)]

    while True:
        enter = -1
        for j in range(d + m):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][width - 1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise UnboundedError("unbounded entering column in simplex")
        pivot_row = tableau[leave]
        pivot = pivot_row[enter]
        inv = QQ(1) / pivot
        for j in range(width):
            pivot_row[j] *= inv
        for i in range(m):
            if i == leave:
                continue
            factor = tableau[i][enter]
            if factor != 0:
                row = tableau[i]
                for j in range(width):
                    row[j] -= factor * pivot_row[j]
        factor = zrow[enter]
        if factor != 0:
            for j in range(width):
                zrow[j] -= factor * pivot_row[j]
        basis[leave] = enter

    x = [zero] * d
    for i in range(m):
        if basis[i] < d:
            x[basis[i]] = tableau[i][width - 1]
    return zrow[width - 1], x


def _always_satisfied_in_box(coeffs, rhs) -> bool:
    # Rows whose box maximum is trivially within the bound never bind.
    return rhs >= sum(c for c in coeffs if c > 0)


def lp_box_maximize(
    objective: Sequence[Fraction], rows: Sequence[Row], d: int
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact maximum of the objective over {x : rows, 0 <= x <= 1}.

    Rows enter the tableau lazily; each outer iteration solves the current
    relaxation and adds the most violated remaining row, which terminates
    because rows are never removed.
    """
    obj = [QQ(c) for c in objective]
    box_rows: list[tuple[list, object]] = []
    for i in range(d):
        coeffs = [QQ(0)] * d
        coeffs[i] = QQ(1)
        box_rows.append((coeffs, QQ(1)))
    pending = []
    for coeffs, rhs in rows:
        dense = [QQ(c) for c in coeffs]
        if len(dense) != d:
            raise ValueError("row width does not match dimension")
        if _always_satisfied_in_box(dense, QQ(rhs)):
            continue
        pending.append((dense, QQ(rhs)))

    active: list[tuple[list, object]] = []
    while True:
        value, x = _simplex_maximize(obj, box_rows + active, d)
        worst = None
        worst_gap = QQ(0)
        for coeffs, rhs in pending:
            lhs = sum(c * x[i] for i, c in enumerate(coeffs) if c != 0)
            gap = lhs - rhs
            if gap > worst_gap:
                worst, worst_gap = (coeffs, rhs), gap
        if worst is None:
            return (
                Fraction(value.numerator, value.denominator),
                tuple(Fraction(v.numerator, v.denominator) for v in x),
            )
        pending.remove(worst)
        active.append(worst)


# ---------------------------------------------------------------------------
# Double description


def _integerize(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[int, ...], int]:
    denoms = [Fraction(c).denominator for c in coeffs] + [Fraction(rhs).denominator]
    scale = lcm(*denoms)
    ints = tuple(int(Fraction(c) * scale) for c in coeffs)
    return ints, int(Fraction(rhs) * scale)


def _reduce_ray(ray: list[int]) -> tuple[int, ...]:
    g = 0
    for v in ray:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in ray)
    return tuple(ray)


def polytope_vertices(
    rows: Sequence[Row], d: int, ray_budget: int = 500_000
) -> list[tuple[Fraction, ...]]:
    """All vertices of {x : rows} for a polytope inside the nonnegative
    orthant, by exact double description.

    The cone starts from a bounding simplex (x >= 0, sum x <= d+1), so the
    input rows must keep the feasible set inside the nonnegative orthant
    and bounded; a leftover recession direction raises UnboundedError.
    """
    # Homogenized rows h with h . (t, x) <= 0.
    processed: list[tuple[int, ...]] = []
    processed.append(tuple([-1] + [0] * d))  # t >= 0
    for i in range(d):
        h = [0] * (d + 1)
        h[1 + i] = -1
        processed.append(tuple(h))  # x_i >= 0
    processed.append(tuple([-(d + 1)] + [1] * d))  # sum x <= (d+1) t

    big = d + 1
    rays: list[tuple[int, ...]] = [tuple([1] + [0] * d)]
    for i in range(d):
        r = [1] + [0] * d
        r[1 + i] = big
        rays.append(tuple(r))

    def dot(h, r):
        return sum(a * b for a, b in zip(h, r) if a)

    zsets: list[int] = []
    for r in rays:
        mask = 0
        for k, h in enumerate(processed):
            if dot(h, r) == 0:
                mask |= 1 << k
        zsets.append(mask)

    seen_rows = set(processed)
    todo: list[tuple[int, ...]] = []
    for coeffs, rhs in rows:
        ints, rhs_int = _integerize(coeffs, rhs)
        if not any(ints):
            if rhs_int < 0:
                return []
            continue
        h = tuple([-rhs_int] + list(ints))
        if h not in seen_rows:
            seen_rows.add(h)
            todo.append(h)

    for h in todo:
        k = len(processed)
        vals = [dot(h, r) for r in rays]
        if all(v <= 0 for v in vals):
            processed.append(h)
            for idx, v in enumerate(vals):
                if v == 0:
                    zsets[idx] |= 1 << k
            continue

        keep_rays: list[tuple[int, ...]] = []
        keep_z: list[int] = []
        neg_idx = [i for i, v in enumerate(vals) if v < 0]
        pos_idx = [i for i, v in enumerate(vals) if v > 0]
        for i, v in enumerate(vals):
            if v < 0:
                keep_rays.append(rays[i])
                keep_z.append(zsets[i])
            elif v == 0:
                keep_rays.append(rays[i])
                keep_z.append(zsets[i] | (1 << k))

        min_common = d - 1  # rank needed for adjacency in a (d+1)-dim cone
        for i in neg_idx:
            zi = zsets[i]
            for j in pos_idx:
                common = zi & zsets[j]
                if common.bit_count() < min_common:
                    continue
                adjacent = True
                for t, zt in enumerate(zsets):
                    if t == i or t == j:
                        continue
                    if common & ~zt == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                combo = [vj * a - vi * b for a, b in zip(rays[i], rays[j])]
                keep_rays.append(_reduce_ray(combo))
                keep_z.append(common | (1 << k))
                if len(keep_rays) > ray_budget:
                    raise MemoryError("double description ray budget exceeded")

        processed.append(h)
        rays = keep_rays
        zsets = keep_z
        if not rays:
            return []

    vertices = []
    for r in rays:
        if r[0] == 0:
            raise UnboundedError("polytope has a recession direction")
        t = r[0]
        vertices.append(tuple(Fraction(x, t) for x in r[1:]))
    return sorted(set(vertices))


def exact_rank(matrix: list[list[Fraction]]) -> int:
    """Rank over the rationals by fraction-free style Gaussian elimination."""
    rows = [[QQ(x) for x in row] for row in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        chosen = None
        for i in range(pivot_row, len(rows)):
            if rows[i][col] != 0:
                chosen = i
                break
        if chosen is None:
            continue
        rows[pivot_row], rows[chosen] = rows[chosen], rows[pivot_row]
        pivot = rows[pivot_row][col]
        for i in range(pivot_row + 1, len(rows)):
            if rows[i][col] != 0:
                factor = rows[i][col] / pivot
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank
