import itertools
import random
from fractions import Fraction

import pytest

from immanants.linalg import bareiss_determinant, ryser_permanent, solve, vandermonde_solve
from immanants.digraph import cycle_format


def leibniz(matrix, signed=True):
    n = len(matrix)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= matrix[i][j]
        sign = (-1) ** (n - len(cycle_format(perm))) if signed else 1
        total += sign * term
    return total


def rand_matrix(rng, n):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]


def test_small_cases():
    assert bareiss_determinant([]) == 1
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert ryser_permanent([[0, 1], [1, 0]]) == 1
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0
    with pytest.raises(ValueError):
        bareiss_determinant([[1, 2]])


def test_against_leibniz():
    rng = random.Random(3)
    for n in range(1, 6):
        for _ in range(10):
            m = rand_matrix(rng, n)
            assert bareiss_determinant(m) == leibniz(m)
            assert ryser_permanent(m) == leibniz(m, signed=False)


def test_pivoting():
    m = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert bareiss_determinant(m) == -1


def test_solve_and_vandermonde():
    rng = random.Random(5)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(6)]
    nodes = list(range(6))
    values = [sum(c * t**j for j, c in enumerate(coeffs)) for t in nodes]
    assert vandermonde_solve(nodes, values) == coeffs
    with pytest.raises(ZeroDivisionError):
        solve([[1, 1], [1, 1]], [1, 2])
