"""Exact integer/rational matrix helpers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def _check_square(M):
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("matrix must be square")
    return n


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Every intermediate value stays an integer; the divisions are exact.
    """
    n = _check_square(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * A[n - 1][n - 1]


def inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals. Raises ValueError if singular."""
    n = _check_square(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if A[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        A[col], A[pivot_row] = A[pivot_row], A[col]
        p = A[col][col]
        if p != 1:
            A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def integer_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix; raises ValueError if not integral."""
    inv = inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("inverse is not integral (matrix is not unimodular)")
        out.append([int(x) for x in row])
    return out


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and len(A[0]) != len(B):
        raise ValueError("shape mismatch")
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]
