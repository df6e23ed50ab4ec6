"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _echelon(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns."""
    pivots = []
    top = 0
    for col in range(ncols):
        pivot = next((i for i in range(top, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        lead = rows[top][col]
        rows[top] = [x / lead for x in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return pivots


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    return len(_echelon(rows, len(rows[0])))


def solve_combination(
    vectors: Sequence[Sequence[int]], target: Sequence[int]
) -> list[Fraction] | None | str:
    """Coefficients ``q`` with ``sum(q[k] * vectors[k]) == target``.

    Returns the unique solution, ``None`` if the system is inconsistent, or
    ``"ambiguous"`` when the vectors are dependent and solutions exist.
    """
    k = len(vectors)
    # one equation per coordinate, unknowns are the coefficients
    rows = [
        [Fraction(v[i]) for v in vectors] + [Fraction(target[i])] for i in range(len(target))
    ]
    pivots = _echelon(rows, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        return "ambiguous"
    q = [Fraction(0)] * k
    for row, col in zip(rows, pivots):
        q[col] = row[k]
    return q
