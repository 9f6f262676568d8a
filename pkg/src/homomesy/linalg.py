"""Exact rational linear algebra for the homomesic-span computation.

Rows are cleared of denominators and eliminated with the fraction-free
(Bareiss) scheme, so every intermediate entry stays an integer.  Pivoting
is deterministic: first nonzero column, smallest remaining row index.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        lcm = 1
        for v in row:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        ints = [int(v * lcm) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _row_echelon(rows: list[list[int]]):
    """Fraction-free elimination; returns (echelon rows, pivot columns)."""
    rows = [row[:] for row in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    prev = 1
    for col in range(ncols):
        pivot_row = next((k for k in range(r, m) if rows[k][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][col]
        for k in range(r + 1, m):
            factor = rows[k][col]
            for c in range(ncols):
                rows[k][c] = (piv * rows[k][c] - factor * rows[r][c]) // prev
        pivots.append(col)
        prev = piv
        r += 1
        if r == m:
            break
    return rows[: len(pivots)], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = _row_echelon(_integer_rows(rows))
    return len(pivots)


def nullspace(rows, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {c : M c = 0} as rational vectors, one per free column.

    An empty row list (no constraints) yields the standard basis, so the
    caller must pass ncols in that case.
    """
    if not rows:
        if ncols is None:
            raise ValueError("ncols required when there are no constraint rows")
        basis = []
        for k in range(ncols):
            vec = [Fraction(0)] * ncols
            vec[k] = Fraction(1)
            basis.append(tuple(vec))
        return basis
    ncols = len(rows[0])
    echelon, pivots = _row_echelon(_integer_rows(rows))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        # back-substitute the pivot coordinates, bottom row up
        for k in reversed(range(len(pivots))):
            col = pivots[k]
            s = sum(
                (Fraction(echelon[k][c]) * vec[c] for c in range(col + 1, ncols)),
                Fraction(0),
            )
            vec[col] = -s / echelon[k][col]
        basis.append(tuple(vec))
    return basis


def span_contains(rows, vectors) -> bool:
    """Whether every vector lies in the row space of rows."""
    base = [list(r) for r in rows]
    r0 = rank(base)
    return rank(base + [list(v) for v in vectors]) == r0


def spans_equal(rows_a, rows_b) -> bool:
    ra = rank([list(r) for r in rows_a])
    rb = rank([list(r) for r in rows_b])
    if ra != rb:
        return False
    return rank([list(r) for r in rows_a] + [list(r) for r in rows_b]) == ra
