"""Exact dense linear algebra over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence


def _square(matrix: Sequence[Sequence]) -> int:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    return n


def bareiss_determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Fraction-free elimination; rational entries are scaled to integers first."""
    n = _square(matrix)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(v) for v in row] for row in matrix]
    scale = Fraction(1)
    ints = []
    for row in rows:
        den = 1
        for v in row:
            den = math.lcm(den, v.denominator)
        scale /= den
        ints.append([int(v * den) for v in row])
    sign = 1
    prev = 1
    a = ints
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def ryser_permanent(matrix: Sequence[Sequence]):
    """Inclusion-exclusion over column subsets; works for any ring entries."""
    n = _square(matrix)
    if n == 0:
        return 1
    total = 0
    for r in range(1, n + 1):
        sign = -1 if (n - r) % 2 else 1
        for cols in combinations(range(n), r):
            prod = 1
            for row in matrix:
                s = 0
                for j in cols:
                    s = s + row[j]
                prod = prod * s
            total = total + sign * prod
    return total


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Gauss-Jordan solve of a nonsingular square system over Q."""
    n = _square(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def vandermonde_solve(nodes: Sequence, values: Sequence) -> list[Fraction]:
    """Coefficients ``c`` with ``sum_j c_j t^j = value`` at every node."""
    matrix = [[Fraction(t) ** j for j in range(len(nodes))] for t in nodes]
    return solve(matrix, values)
