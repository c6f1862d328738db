"""Dense Gaussian elimination over a CoefficientField (small matrices only)."""

from __future__ import annotations

from typing import Sequence

from .field import CoefficientField


def row_echelon(rows: Sequence[Sequence], field: CoefficientField):
    """Return (echelon rows, pivot columns, sign of the row permutation)."""
    a = [[field.convert(c) for c in row] for row in rows]
    if not a:
        return a, [], 1
    ncols = len(a[0])
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        inv = field.inv(a[r][c])
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                factor = field.mul(a[i][c], inv)
                a[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots, sign


def rank(rows: Sequence[Sequence], field: CoefficientField) -> int:
    return len(row_echelon(rows, field)[1])


def det(rows: Sequence[Sequence], field: CoefficientField):
    n = len(rows)
    if n == 0:
        return field.convert(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    a, pivots, sign = row_echelon(rows, field)
    if len(pivots) < n:
        return field.convert(0)
    d = field.convert(sign)
    for i in range(n):
        d = field.mul(d, a[i][i])
    return d
