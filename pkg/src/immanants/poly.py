"""Sparse bivariate polynomials in ``x`` and ``y`` over the rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
Monomial = tuple[int, int]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly2:
    """Immutable polynomial ``sum c_ab x^a y^b`` with exact rational coefficients.

    Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | Iterable[tuple[Monomial, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError("negative exponent")
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + _frac(c)
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def const(cls, c: Number) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, c: Number, a: int = 0, b: int = 0) -> "Poly2":
        return cls({(a, b): c})

    @staticmethod
    def coerce(value) -> "Poly2":
        if isinstance(value, Poly2):
            return value
        return Poly2.const(value)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant(self) -> Fraction:
        """Value of a constant polynomial; raises if ``x`` or ``y`` occur."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0), Fraction(0))

    def coefficient(self, a: int, b: int = 0) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    @property
    def degree_x(self) -> int:
        return max((a for a, _ in self._terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((b for _, b in self._terms), default=0)

    def substitute(self, x: Number, y: Number = 0) -> Fraction:
        return sum((c * Fraction(x) ** a * Fraction(y) ** b for (a, b), c in self._terms.items()), Fraction(0))

    def __add__(self, other) -> "Poly2":
        other = Poly2.coerce(other)
        return Poly2(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly2":
        return self + (-Poly2.coerce(other))

    def __rsub__(self, other) -> "Poly2":
        return Poly2.coerce(other) - self

    def __mul__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            c = _frac(other)
            return Poly2({m: c * v for m, v in self._terms.items()})
        acc: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return Poly2(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly2":
        out = Poly2.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Poly2({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b) in sorted(self._terms, reverse=True):
            c = self._terms[(a, b)]
            mono = ("x" if a == 1 else f"x^{a}" if a else "") + ("y" if b == 1 else f"y^{b}" if b else "")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_WEIGHT = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?([xyw]?)$")


def parse_weight(text: str, symbols: str = "xy") -> tuple[Fraction, str]:
    """Parse ``3x``, ``-1/2``, ``2y``, ``-w`` into ``(coefficient, symbol)``.

    ``symbol`` is ``""`` for a plain rational.
    """
    m = _WEIGHT.match(text.strip())
    if not m or (m.group(2) is None and not m.group(3)):
        raise ValueError(f"malformed weight {text!r}")
    sign, number, sym = m.groups()
    if sym and sym not in symbols:
        raise ValueError(f"symbol {sym!r} not allowed here")
    c = Fraction(number) if number else Fraction(1)
    if c == 0:
        raise ValueError("zero weight")
    return (-c if sign == "-" else c), sym


def format_weight(c: Fraction, symbol: str = "") -> str:
    if symbol and abs(c) == 1:
        return ("-" if c < 0 else "") + symbol
    return f"{c}{symbol}"


def weight_to_poly(c: Fraction, symbol: str) -> Poly2:
    if symbol == "x":
        return Poly2.monomial(c, 1, 0)
    if symbol == "y":
        return Poly2.monomial(c, 0, 1)
    return Poly2.const(c)
