"""Row-style Hermite normal form and integer kernels."""
from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon(rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Unimodular row reduction of the first ``ncols`` columns.

    Returns the transformed rows (all columns carried along) and the pivot
    columns; rows below the last pivot are zero in the reduced columns.
    """
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            g, s, t = _xgcd(A[r][c], A[i][c])
            u, v = A[r][c] // g, A[i][c] // g
            top = [s * x + t * y for x, y in zip(A[r], A[i])]
            bot = [-v * x + u * y for x, y in zip(A[r], A[i])]
            A[r], A[i] = top, bot
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Hermite normal form of the row lattice, zero rows removed."""
    A, pivots = echelon(rows)
    return A[: len(pivots)]


def integer_kernel(A: Sequence[Sequence[int]], m: int) -> Matrix:
    """A Z-basis (in Hermite form) of {z in Z^m : A z = 0} for an r x m integer matrix A."""
    r = len(A)
    aug = [[A[i][j] for i in range(r)] + [1 if k == j else 0 for k in range(m)] for j in range(m)]
    red, pivots = echelon(aug, r)
    kernel = [row[r:] for row in red[len(pivots):]]
    return hnf(kernel) if kernel else []
