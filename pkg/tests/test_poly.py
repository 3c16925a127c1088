from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from immanants.poly import Poly2, format_weight, parse_weight, weight_to_poly

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeffs, max_size=4).map(Poly2)


def test_no_zero_terms():
    p = Poly2({(1, 0): 2, (0, 0): 0})
    assert p.terms == {(1, 0): Fraction(2)}
    assert (Poly2.x() - Poly2.x()).is_zero()


def test_str_is_canonical():
    p = Poly2({(2, 1): 3, (0, 0): 2, (1, 0): Fraction(-1, 2)})
    assert str(p) == "3*x^2y - 1/2*x + 2"
    assert str(Poly2()) == "0"
    assert str(-Poly2.y()) == "-y"


def test_coefficient_and_substitute():
    p = Poly2({(2, 1): 3, (0, 0): 2})
    assert p.coefficient(2, 1) == 3
    assert p.coefficient(5, 5) == 0
    assert Poly2().coefficient(0, 0) == 0
    assert p.substitute(2, 3) == 3 * 4 * 3 + 2
    with pytest.raises(ValueError):
        p.constant()


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly2()


@given(polys, polys)
def test_degrees_add(a, b):
    if not a.is_zero() and not b.is_zero():
        assert (a * b).degree_x == a.degree_x + b.degree_x
        assert (a * b).degree_y == a.degree_y + b.degree_y


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_is_a_homomorphism(a, x, y):
    b = a * a + Poly2.x()
    assert b.substitute(x, y) == a.substitute(x, y) ** 2 + x


@pytest.mark.parametrize(
    "text, expected",
    [("3x", (3, "x")), ("-1/2", (Fraction(-1, 2), "")), ("2y", (2, "y")), ("-x", (-1, "x")), ("+7", (7, ""))],
)
def test_parse_weight(text, expected):
    assert parse_weight(text) == (Fraction(expected[0]), expected[1])


@pytest.mark.parametrize("text", ["", "x2", "0", "3z", "1/0x", "--1"])
def test_parse_weight_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_weight(text)


def test_w_symbol_only_when_allowed():
    with pytest.raises(ValueError):
        parse_weight("w")
    assert parse_weight("-w", symbols="w") == (-1, "w")


@given(coeffs.filter(bool), st.sampled_from(["", "x", "y"]))
def test_weight_roundtrip(c, sym):
    assert parse_weight(format_weight(c, sym)) == (c, sym)
    assert weight_to_poly(c, sym).is_monomial()
