import itertools
import math
import random
from fractions import Fraction

import pytest

from conftest import brute_immanant, random_matrix
from immanants.characters import character
from immanants.digraph import (
    BipartiteGraph,
    GraphError,
    WeightedDigraph,
    cc_sum,
    count_matchings,
    count_perfect_matchings,
    cycle_cover_sums,
    determinant,
    enumerate_cycle_covers,
    evaluate_immanant_grid,
    extract_coefficient,
    immanant,
    interpolate_immanant_coefficient,
    matrix_immanant,
    permanent,
)
from immanants.partitions import PartitionError, partitions_of
from immanants.poly import Poly2


def cycle(n):
    g = WeightedDigraph(n)
    for i in range(n):
        g.add_arc(i, (i + 1) % n)
    return g


def complete(n, loops=True):
    g = WeightedDigraph(n)
    for u in range(n):
        for v in range(n):
            if loops or u != v:
                g.add_arc(u, v)
    return g


def test_graph_validation():
    g = WeightedDigraph(2)
    g.add_arc(0, 0, 5)
    with pytest.raises(GraphError):
        g.add_arc(0, 0, 1)
    with pytest.raises(GraphError):
        g.add_arc(0, 2, 1)
    with pytest.raises(GraphError):
        g.add_arc(1, 0, 0)


def test_cover_examples():
    covers = list(enumerate_cycle_covers(cycle(3)))
    assert [c.format for c in covers] == [(3,)]
    g = WeightedDigraph(2)
    g.add_arc(0, 0)
    g.add_arc(1, 1)
    assert [c.format for c in enumerate_cycle_covers(g)] == [(1, 1)]
    assert len(list(enumerate_cycle_covers(complete(3, loops=False)))) == permanent(
        [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    ).constant()
    assert list(enumerate_cycle_covers(WeightedDigraph(1))) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_digraph_has_n_factorial_covers(n):
    covers = list(enumerate_cycle_covers(complete(n)))
    assert len(covers) == math.factorial(n)
    assert len({c.successors for c in covers}) == len(covers)
    assert all(sum(c.format) == n for c in covers)


def test_immanant_examples():
    digon = WeightedDigraph.from_matrix([[0, 1], [1, 0]])
    assert immanant((1, 1), digon) == -1
    assert immanant((2,), digon) == 1
    loop = WeightedDigraph.from_matrix([[5]])
    assert immanant((1,), loop) == 5
    with pytest.raises(PartitionError):
        immanant((2,), loop)


def test_cc_sum():
    tri = cycle(3)
    assert cc_sum(tri, (3,)) == 1
    assert cc_sum(tri, (1, 1, 1)) == 0


def test_immanant_against_permutation_sum():
    rng = random.Random(11)
    for n in range(1, 7):
        for _ in range(3):
            m = random_matrix(rng, n, density=0.6)
            g = WeightedDigraph.from_matrix(m)
            sums = cycle_cover_sums(g)
            for lam in partitions_of(n):
                value = immanant(lam, g)
                assert value == brute_immanant(lam, m)
                assert value == sum((p * character(lam, f) for f, p in sums.items()), Poly2())


def test_det_per_specialisations():
    rng = random.Random(2)
    for _ in range(5):
        m = random_matrix(rng, 5)
        assert matrix_immanant((1,) * 5, m) == determinant(m)
        assert matrix_immanant((5,), m) == permanent(m)
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert permanent([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    with pytest.raises(GraphError):
        determinant([[1, 2]])


def test_polynomial_entries():
    x, y = Poly2.x(), Poly2.y()
    m = [[x, 1], [1, y]]
    assert determinant(m) == x * y - 1
    assert permanent(m) == x * y + 1
    g = WeightedDigraph.from_matrix(m)
    assert immanant((1, 1), g) == x * y - 1


def test_hook_immanant_formula():
    rng = random.Random(4)
    for _ in range(5):
        m = random_matrix(rng, 5)
        expected = Fraction(0)
        for perm in itertools.permutations(range(5)):
            fixed = sum(1 for i, j in enumerate(perm) if i == j)
            cycles = len({frozenset(_orbit(perm, i)) for i in range(5)})
            term = math.prod(m[i][j] for i, j in enumerate(perm))
            expected += (-1) ** (5 - cycles) * (fixed - 1) * term
        assert matrix_immanant((2, 1, 1, 1), m) == expected


def _orbit(perm, i):
    out = [i]
    j = perm[i]
    while j != i:
        out.append(j)
        j = perm[j]
    return out


def test_extract_coefficient():
    p = Poly2({(2, 1): 3, (0, 0): 2})
    assert extract_coefficient(p, 2, 1) == 3
    assert extract_coefficient(Poly2(), 4, 0) == 0


def test_interpolation_matches_symbolic():
    rng = random.Random(9)
    for n in range(2, 6):
        g = WeightedDigraph(n)
        for u in range(n):
            for v in range(n):
                r = rng.random()
                if r < 0.25:
                    g.add_arc(u, v, Poly2.monomial(rng.randint(1, 3), 1, 0))
                elif r < 0.4:
                    g.add_arc(u, v, Poly2.monomial(-1, 0, 1))
                elif r < 0.8:
                    g.add_arc(u, v, rng.randint(-2, 2) or 1)
        for lam in partitions_of(n)[:3]:
            imm = immanant(lam, g)
            for a in range(n + 1):
                for b in range(2):
                    assert interpolate_immanant_coefficient(lam, g, a, b) == imm.coefficient(a, b)


def test_grid_evaluation_matches_pointwise():
    rng = random.Random(4)
    for n in range(1, 6):
        g = WeightedDigraph(n)
        for u in range(n):
            for v in range(n):
                r = rng.random()
                if r < 0.3:
                    g.add_arc(u, v, Poly2.monomial(Fraction(rng.randint(1, 3), 2), 1, 0))
                elif r < 0.45:
                    g.add_arc(u, v, Poly2.monomial(-1, 0, 1))
                elif r < 0.8:
                    g.add_arc(u, v, Fraction(rng.randint(-2, 2) or 1, rng.randint(1, 3)))
        points = [(xv, yv) for xv in range(3) for yv in (0, 2, -1)]
        for lam in partitions_of(n):
            grid = evaluate_immanant_grid(lam, g, points)
            assert grid == [immanant(lam, g.substitute(xv, yv)).constant() for xv, yv in points]


def test_interpolation_trivial_cases():
    g = WeightedDigraph.from_matrix([[2, 1], [1, 3]])
    assert interpolate_immanant_coefficient((2,), g, 0, 0) == 7
    assert interpolate_immanant_coefficient((2,), g, 1, 0) == 0
    loop = WeightedDigraph(1)
    loop.add_arc(0, 0, Poly2.x())
    assert interpolate_immanant_coefficient((1,), loop, 1) == 1
    bad = WeightedDigraph(1)
    bad.add_arc(0, 0, Poly2.x() * Poly2.x())
    with pytest.raises(GraphError):
        interpolate_immanant_coefficient((1,), bad, 2)


def test_interpolation_in_parallel():
    g = WeightedDigraph(3)
    for u in range(3):
        g.add_arc(u, u, Poly2.x())
        g.add_arc(u, (u + 1) % 3, 2)
    imm = immanant((2, 1), g)
    assert interpolate_immanant_coefficient((2, 1), g, 1, 0, jobs=2) == imm.coefficient(1, 0)


def test_linked_pruning_equals_leaf_filter():
    rng = random.Random(1)
    g = WeightedDigraph.from_matrix(random_matrix(rng, 6, density=0.7))
    ends, arcs = (0, 1), {(0, 2), (2, 1), (1, 3), (3, 0)} & set(g._arcs)

    def accept(succ):
        flags = {(x, succ[x]) in arcs for x in ends} | {(p, s) in arcs for p, s in enumerate(succ) if s in ends}
        return len(flags) == 1

    assert cycle_cover_sums(g, accept=accept) == cycle_cover_sums(g, linked=[(ends, arcs)])


def test_matchings():
    h = BipartiteGraph(2, 2)
    for l in range(2):
        for r in range(2):
            h.add_edge(l, r, l + r + 1)
    assert count_matchings(h, 0) == 1
    assert count_matchings(h, 1) == 1 + 2 + 2 + 3
    assert count_perfect_matchings(h) == 1 * 3 + 2 * 2
    with pytest.raises(GraphError):
        h.add_edge(0, 0, 1)
    odd = BipartiteGraph(2, 1)
    with pytest.raises(GraphError):
        count_perfect_matchings(odd)
    assert count_perfect_matchings(BipartiteGraph(3, 1)) == 0
