import itertools
import random
from fractions import Fraction

from immanants.characters import character
from immanants.digraph import BipartiteGraph, cycle_format


def brute_immanant(lam, matrix):
    """Sum over all permutations, independent of the cover search."""
    n = len(matrix)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= matrix[i][j]
            if not term:
                break
        if term:
            total += character(lam, cycle_format(perm)) * term
    return total


def random_matrix(rng, n, density=1.0, lo=-3, hi=3):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if rng.random() < density:
                row.append(Fraction(rng.randint(lo, hi), rng.randint(1, 3)))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return rows


def all_bigraphs(n_left, n_right, max_degree=3):
    """Every bipartite graph on the given sides, up to the degree bound."""
    pairs = [(l, r) for l in range(n_left) for r in range(n_right)]
    for mask in range(1 << len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        deg = {}
        for l, r in chosen:
            deg[("L", l)] = deg.get(("L", l), 0) + 1
            deg[("R", r)] = deg.get(("R", r), 0) + 1
        if max(deg.values(), default=0) > max_degree:
            continue
        yield chosen


def weighted_bigraph(n_left, n_right, edges, rng=None):
    h = BipartiteGraph(n_left, n_right)
    for l, r in edges:
        w = 1 if rng is None else Fraction(rng.choice([1, 2, 3, -1]), rng.choice([1, 2]))
        h.add_edge(l, r, w)
    return h


def seeded(seed=0):
    return random.Random(seed)


# One line per acceptance criterion, filled in by tests/test_acceptance.py
# and echoed in the terminal summary.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
