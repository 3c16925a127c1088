import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from immanants.partitions import (
    DichotomyViolation,
    PartitionError,
    PeelSequence,
    SkewShape,
    boxes_right_of_first_column,
    conjugate,
    contains,
    format_partition,
    is_partition,
    onion,
    parse_partition,
    partitions_of,
    peel_domino,
    peel_nonvanishing_tetromino,
    resource_dichotomy,
    staircase,
    stats,
    tetromino_number,
    two_core,
)

ONION_FIGURE = (14, 13, 12, 9, 8, 5, 4, 3, 2, 1)

partitions = st.lists(st.integers(1, 7), max_size=7).map(lambda xs: tuple(sorted(xs, reverse=True)))


def test_parse_and_format():
    assert parse_partition("4,4,3,3,3,2") == (4, 4, 3, 3, 3, 2)
    assert parse_partition("4^2,3^3,2") == (4, 4, 3, 3, 3, 2)
    assert parse_partition("") == ()
    assert format_partition((4, 4, 3, 3, 3, 2), compact=True) == "4^2,3^3,2"
    with pytest.raises(PartitionError):
        parse_partition("2,3")
    with pytest.raises(PartitionError):
        parse_partition("2,0")


@given(partitions)
def test_format_roundtrip(lam):
    assert parse_partition(format_partition(lam)) == lam
    assert parse_partition(format_partition(lam, compact=True)) == lam


def test_partition_counts():
    # p(n) for n = 0..12
    assert [len(partitions_of(n)) for n in range(13)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_contains():
    assert contains((4, 4, 3, 3, 3, 2), (2, 2, 1, 1))
    assert contains((3, 1), ())
    assert not contains((2, 1), (3,))


def test_boxes_right_of_first_column():
    assert boxes_right_of_first_column((4, 4, 3, 3, 3, 2)) == 13
    assert boxes_right_of_first_column((1, 1, 1, 1)) == 0
    assert boxes_right_of_first_column((5,)) == 4


def test_skew_shape_validation():
    with pytest.raises(PartitionError):
        SkewShape((2, 1), (3,))
    assert SkewShape((3, 2), (1,)).size == 4


def test_peel_domino():
    assert peel_domino((3, 2, 1)) == []
    assert [rest for _, rest in peel_domino((2,))] == [()]
    for lam in partitions_of(8):
        for dom, rest in peel_domino(lam):
            assert is_partition(rest)
            assert sum(rest) == sum(lam) - 2
            assert contains(lam, rest)
    # (3,1): only the top-row horizontal domino can go
    assert [rest for _, rest in peel_domino((3, 1))] == [(1, 1)]


def test_two_core_examples():
    st22 = stats((2, 2))
    assert (st22.d, st22.staircase, st22.w, st22.z) == (2, (), 0, 0)
    fig = stats(ONION_FIGURE)
    assert (fig.d, fig.w, fig.z) == (8, 10, 55)
    # frozen from exhaustive peeling
    s = stats((4, 4, 3, 3, 3, 2))
    assert (s.d, s.staircase, s.b) == (9, (1,), 13)


def test_two_core_order_independent():
    rng = random.Random(7)
    for lam in partitions_of(12):
        ref = two_core(lam)
        for _ in range(10):
            other = two_core(lam, rng)
            assert (other.d, other.staircase) == (ref.d, ref.staircase)


@given(partitions)
def test_stats_invariants(lam):
    s = stats(lam)
    assert 2 * s.d + s.z == sum(lam)
    assert s.z == s.w * (s.w + 1) // 2
    assert s.staircase == staircase(s.w)
    assert s.b == sum(lam) - len(lam)
    assert s.peel_certificate.end == s.staircase
    assert len(s.peel_certificate) == s.d


def test_peel_sequence_rejects_illegal_peel():
    from immanants.partitions import Peel

    bad = PeelSequence((2, 2), (Peel("domino", frozenset({(0, 0), (0, 1)})),))
    with pytest.raises(PartitionError):
        bad.end


def test_nonvanishing_tetromino_peels():
    assert peel_nonvanishing_tetromino((1, 1, 1, 1)) == ()
    assert [rest for _, rest in peel_nonvanishing_tetromino((4,))] == [()]
    assert () in [rest for _, rest in peel_nonvanishing_tetromino((2, 2))]


def test_tetromino_number():
    assert tetromino_number((8,))[0] == 2
    assert tetromino_number((1,) * 9)[0] == 0
    count, seq = tetromino_number((4, 4, 4, 4))
    assert count == 4
    assert len(seq) == 4
    assert seq.end == ()


def test_tetromino_number_row_and_column():
    for n in range(1, 17):
        assert tetromino_number((n,))[0] == n // 4
        assert tetromino_number((1,) * n)[0] == 0


def test_onion_figure():
    ol = onion(ONION_FIGURE, 2)
    assert ol.theta == (19, 15)
    assert ol.format == (19, 15) + (2,) * 8 + (1,) * 21
    assert ol.accommodated_edges == 16


def test_onion_small_cases():
    ol = onion((3, 2, 1), 1)
    assert ol.theta == (5,)
    assert ol.format == (5, 1)
    zero = onion((4, 3, 2, 1, 1, 1), 0)
    s = stats((4, 3, 2, 1, 1, 1))
    assert zero.format == (2,) * s.d + (1,) * s.z
    with pytest.raises(PartitionError):
        onion((3, 2, 1), 2)


@given(partitions, st.integers(0, 3))
def test_onion_invariants(lam, layers):
    s = stats(lam)
    if 2 * layers > s.w:
        return
    ol = onion(lam, layers)
    assert sum(ol.format) == sum(lam)
    assert all(p % 2 == 1 for p in ol.theta)
    assert len(set(ol.theta)) == len(ol.theta)
    assert sum(ol.theta) == 2 * ol.accommodated_edges + layers


def test_dichotomy_examples():
    d = resource_dichotomy((1, 1, 1, 1, 1))
    assert d.b == 0 and d.staircase_bound
    d = resource_dichotomy((16,))
    assert d.s == 4 and d.tetromino_bound


def test_dichotomy_violation_is_distinguished():
    assert issubclass(DichotomyViolation, RuntimeError)
    assert not issubclass(DichotomyViolation, PartitionError)


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
