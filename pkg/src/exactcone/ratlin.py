"""Exact rational linear algebra for small dense systems."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Sequence

Rat = Fraction
Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    width = len(rows[0]) if rows else 0
    out = []
    for r in rows:
        if len(r) != width:
            raise ValueError("ragged matrix")
        out.append([Fraction(v) for v in r])
    return out


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def _pick_pivot(m: Matrix, col: int, start: int) -> int | None:
    # smallest bit-length non-zero entry keeps coefficient growth down
    best = None
    best_size = None
    for i in range(start, len(m)):
        v = m[i][col]
        if v:
            size = v.numerator.bit_length() + v.denominator.bit_length()
            if best is None or size < best_size:
                best, best_size = i, size
    return best


def row_echelon(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = as_matrix(m)
    pivots: list[int] = []
    row = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        p = _pick_pivot(a, col, row)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for i in range(len(a)):
            if i != row and a[i][col]:
                f = a[i][col]
                ai, ar = a[i], a[row]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(row_echelon(m)[1])


def linearly_independent(vectors: Sequence[Sequence]) -> bool:
    return rank(vectors) == len(vectors)


def affinely_independent(vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return True
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise ValueError("vectors must have equal dimension")
    return rank([list(v) + [1] for v in vectors]) == len(vectors)


class SolveStatus(enum.Enum):
    NO_SOLUTION = "NoSolution"
    UNIQUE = "Unique"
    UNDERDETERMINED = "Underdetermined"


class SolveResult(NamedTuple):
    status: SolveStatus
    x: tuple[Fraction, ...] | None = None


def solve_exact(a: Sequence[Sequence], b: Sequence) -> SolveResult:
    """Classify ``a @ x = b`` over the rationals."""
    if len(a) != len(b):
        raise ValueError("a.rows must equal len(b)")
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    red, pivots = row_echelon(aug)
    if ncols in pivots:
        return SolveResult(SolveStatus.NO_SOLUTION)
    if len(pivots) < ncols:
        return SolveResult(SolveStatus.UNDERDETERMINED)
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = red[r][ncols]
    return SolveResult(SolveStatus.UNIQUE, tuple(x))


def matvec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(v) * xv for v, xv in zip(row, x)), Fraction(0)) for row in a]
