"""Exact Gauss-Jordan elimination over Q(i) with deterministic pivoting."""

from __future__ import annotations

from typing import Optional, Sequence

from .gaussian import ONE, ZERO


def rref(matrix: Sequence[Sequence], pivot_cols: Optional[int] = None):
    """Reduced row echelon form.

    Pivots are searched only in the first ``pivot_cols`` columns (all by
    default), so extra columns act as right-hand sides and may hold floats.
    Returns (rows, pivot column indices).
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    limit = ncols if pivot_cols is None else pivot_cols
    pivots = []
    r = 0
    for c in range(limit):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != ONE:
            inv = ONE / piv
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : matrix x = 0}; one vector per free column, with a 1 there."""
    if not matrix:
        return [[ONE if j == k else ZERO for j in range(ncols)] for k in range(ncols)]
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(rows, pivots):
            x[pc] = -row[fc]
        basis.append(x)
    return basis
