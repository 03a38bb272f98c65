"""Exact Gaussian elimination helpers over Fraction matrices (internal)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Row = Sequence[Fraction]

_F0 = Fraction(0)


def rank(rows: Sequence[Row]) -> int:
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rk = 0
    col = 0
    while rk < len(work) and col < ncols:
        pivot = next((i for i in range(rk, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        pv = work[rk][col]
        for i in range(len(work)):
            if i != rk and work[i][col] != 0:
                factor = work[i][col] / pv
                row_i, row_r = work[i], work[rk]
                for j in range(col, ncols):
                    row_i[j] -= factor * row_r[j]
        rk += 1
        col += 1
    return rk


def independent_rows(rows: Sequence[Row]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    kept: list[int] = []
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, row in enumerate(rows):
        work = list(row)
        for pcol, prow in zip(pivots, reduced):
            if work[pcol] != 0:
                factor = work[pcol] / prow[pcol]
                for j in range(len(work)):
                    work[j] -= factor * prow[j]
        pivot = next((j for j in range(len(work)) if work[j] != 0), None)
        if pivot is not None:
            kept.append(idx)
            reduced.append(work)
            pivots.append(pivot)
    return kept


def solve_exact(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Some exact solution of ``rows @ x = rhs`` (free vars pinned to 0), or None."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col] / pv
                row_i, row_r = aug[i], aug[r]
                for j in range(col, n + 1):
                    row_i[j] -= factor * row_r[j]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [_F0] * n
    for i, col in enumerate(pivot_cols):
        x[col] = aug[i][n] / aug[i][col]
    return x


def in_span(rows: Sequence[Row], vector: Row) -> bool:
    """Whether ``vector`` lies in the row span of ``rows``."""
    if all(v == 0 for v in vector):
        return True
    if not rows:
        return False
    base = rank(rows)
    return rank(list(rows) + [vector]) == base
