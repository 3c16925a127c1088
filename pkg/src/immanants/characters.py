"""Symmetric-group characters via border strip tableaux.

Border strips are removed through the beta-set (abacus) encoding of a
partition: taking a ``k``-strip off ``lam`` moves one bead from position
``x`` to an empty position ``x - k``, and the strip's height is the number
of beads strictly between the two positions.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .partitions import (
    Cell,
    Partition,
    PartitionError,
    SkewShape,
    as_partition,
    canonical_cells,
    cells_of,
    contains,
    is_staircase,
    partitions_of,
    peel_domino,
    shape_from_diagram,
    stats,
)


@lru_cache(maxsize=None)
def rim_hooks(lam: Partition, k: int) -> tuple[tuple[Partition, int], ...]:
    """All ``(rest, height)`` with ``lam/rest`` a border strip of ``k`` boxes."""
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    occupied = set(beta)
    out = []
    for x in beta:
        y = x - k
        if y < 0 or y in occupied:
            continue
        height = sum(1 for b in beta if y < b < x)
        new_beta = sorted((b if b != x else y for b in beta), reverse=True)
        rest = tuple(b - (n - 1 - i) for i, b in enumerate(new_beta))
        out.append((tuple(p for p in rest if p), height))
    return tuple(out)


def _strip_moves(outer: Partition, k: int, inner: Partition) -> Iterator[tuple[Partition, int]]:
    for rest, height in rim_hooks(outer, k):
        if contains(rest, inner):
            yield rest, height


@dataclass(frozen=True)
class BorderStripTableau:
    shape: SkewShape
    strips: tuple[frozenset[Cell], ...]
    heights: tuple[int, ...]

    @property
    def sign(self) -> int:
        return -1 if sum(self.heights) % 2 else 1


def enumerate_bst(shape: SkewShape | Sequence[int], kappa: Sequence[int]) -> list[BorderStripTableau]:
    """All border strip tableaux of ``shape`` whose i-th strip has ``kappa[i]`` boxes.

    Strip 1 is peeled from the outer boundary first.
    """
    if not isinstance(shape, SkewShape):
        shape = SkewShape(tuple(shape))
    kappa = tuple(kappa)
    if sum(kappa) != shape.size:
        raise PartitionError(f"composition {kappa} does not match {shape.size} boxes")
    if any(k <= 0 for k in kappa):
        raise PartitionError("composition parts must be positive")
    out: list[BorderStripTableau] = []

    def rec(outer: Partition, i: int, strips: list, heights: list) -> None:
        if i == len(kappa):
            out.append(BorderStripTableau(shape, tuple(strips), tuple(heights)))
            return
        for rest, height in _strip_moves(outer, kappa[i], shape.inner):
            strips.append(cells_of(outer) - cells_of(rest))
            heights.append(height)
            rec(rest, i + 1, strips, heights)
            strips.pop()
            heights.pop()

    rec(shape.outer, 0, [], [])
    return out


@lru_cache(maxsize=None)
def _chi(lam: Partition, rho: Partition) -> int:
    if not rho:
        return 1
    total = 0
    for rest, height in rim_hooks(lam, rho[0]):
        value = _chi(rest, rho[1:])
        if value:
            total += -value if height % 2 else value
    return total


def character(lam: Sequence[int], rho: Sequence[int]) -> int:
    """Irreducible character value chi_lam(rho) by the Murnaghan-Nakayama rule.

    Strips are peeled largest part first with memoization on
    ``(remaining shape, remaining parts)``; exponential in the worst case.
    """
    lam, rho = as_partition(lam), as_partition(rho)
    if sum(lam) != sum(rho):
        raise PartitionError(f"|{lam}| != |{rho}|")
    return _chi(lam, rho)


def character_table(n: int) -> tuple[list[Partition], np.ndarray]:
    """Rows and columns indexed by ``partitions_of(n)`` (reverse lex order)."""
    if n < 1:
        raise PartitionError("n must be positive")
    parts = partitions_of(n)
    table = np.array([[_chi(lam, rho) for rho in parts] for lam in parts], dtype=np.int64)
    return parts, table


def class_size(rho: Sequence[int]) -> int:
    """Number of permutations with cycle type ``rho``."""
    n = sum(rho)
    denom = 1
    for part, mult in Counter(rho).items():
        denom *= part**mult * math.factorial(mult)
    return math.factorial(n) // denom


def staircase_vanishing_check(mu: Sequence[int], rho: Sequence[int]) -> bool:
    """True iff chi_mu(rho) = 0; ``mu`` must be a staircase."""
    if not is_staircase(mu):
        raise PartitionError(f"{tuple(mu)} is not a staircase")
    return character(mu, rho) == 0


# --- partition products ------------------------------------------------------


def alpha(family: Iterable[Sequence[int]], gamma: SkewShape) -> int:
    """Signed count of border strip tableaux of ``gamma`` over formats in ``family``."""
    total = 0
    for rho in family:
        rho = as_partition(rho)
        if sum(rho) != gamma.size:
            raise PartitionError(f"{rho} has {sum(rho)} boxes, shape has {gamma.size}")
        total += sum(t.sign for t in enumerate_bst(gamma, rho))
    return total


@lru_cache(maxsize=None)
def tetromino_alpha(cells: frozenset[Cell]) -> int:
    """Coefficient for the family {(2,2), (4)} on a canonical 4-box cell set."""
    return alpha([(2, 2), (4,)], SkewShape.from_cells(cells))


@dataclass(frozen=True)
class PartitionProduct:
    factors: tuple[tuple[Partition, ...], ...]

    def __post_init__(self) -> None:
        factors = tuple(tuple(as_partition(p) for p in f) for f in self.factors)
        for f in factors:
            if not f:
                raise PartitionError("empty factor")
            if len({sum(p) for p in f}) != 1:
                raise PartitionError(f"factor {f} mixes sizes")
        object.__setattr__(self, "factors", factors)

    @property
    def size(self) -> int:
        return sum(sum(f[0]) for f in self.factors)

    def concatenations(self) -> Iterator[Partition]:
        """The multiset of partitions, one choice per factor."""

        def rec(i: int, acc: tuple[int, ...]) -> Iterator[Partition]:
            if i == len(self.factors):
                yield as_partition(acc)
                return
            for rho in self.factors[i]:
                yield from rec(i + 1, acc + rho)

        return rec(0, ())


def _peel_parts(states: dict[Partition, int], parts: Sequence[int]) -> dict[Partition, int]:
    for k in parts:
        nxt: dict[Partition, int] = defaultdict(int)
        for lam, coeff in states.items():
            for rest, height in rim_hooks(lam, k):
                nxt[rest] += -coeff if height % 2 else coeff
        states = {lam: c for lam, c in nxt.items() if c}
    return states


def character_on_product(lam: Sequence[int], product: PartitionProduct) -> int:
    """chi_lam summed over the multiset ``product``.

    Works factor by factor: every partition of a factor is peeled strip by
    strip and the results are merged by remaining shape, so each factor
    contributes the coefficient of the skew shape it removes.
    """
    lam = as_partition(lam)
    if sum(lam) != product.size:
        raise PartitionError(f"|{lam}| != {product.size}")
    states = {lam: 1}
    for factor in product.factors:
        merged: dict[Partition, int] = defaultdict(int)
        for rho in factor:
            for rest, c in _peel_parts(states, rho).items():
                merged[rest] += c
        states = {mu: c for mu, c in merged.items() if c}
        if not states:
            return 0
    return states.get((), 0)


def theta_product(lam: Sequence[int], s: int) -> PartitionProduct:
    """{(2,2),(4)}^s x {(2^(d-2s), 1^z)} for the domino number d and staircase size z."""
    st = stats(as_partition(lam))
    if s < 0 or 2 * s > st.d:
        raise PartitionError(f"need 0 <= 2s <= d, got s={s}, d={st.d}")
    tail = (2,) * (st.d - 2 * s) + (1,) * st.z
    return PartitionProduct((((2, 2), (4,)),) * s + ((tail,),))


# --- tetromino table ---------------------------------------------------------

# Expected non-vanishing tetrominos as ydiagram strings, grouped by sign.
NONVANISHING_POSITIVE = ("4", "2,2", "1+1,2,1", "3+2,2", "2+1,2+1,1,1")
NONVANISHING_NEGATIVE = ("3,1", "2+1,3", "2+2,1,1", "3+1,3+1,2")


def tetromino_table(max_boxes: int = 10) -> dict[frozenset[Cell], int]:
    """Coefficient of every canonical two-domino shape found in partitions up to ``max_boxes``.

    Each shape is a union of two dominos peeled in succession from some
    partition.
    """
    table: dict[frozenset[Cell], int] = {}
    for n in range(4, max_boxes + 1):
        for lam in partitions_of(n):
            for _, mid in peel_domino(lam):
                for _, rest in peel_domino(mid):
                    key = SkewShape(lam, rest).canonical()
                    if key not in table:
                        table[key] = tetromino_alpha(key)
    return table


def expected_tetromino_shapes() -> dict[frozenset[Cell], int]:
    out = {canonical_cells(shape_from_diagram(d)): 2 for d in NONVANISHING_POSITIVE}
    out.update({canonical_cells(shape_from_diagram(d)): -2 for d in NONVANISHING_NEGATIVE})
    return out


# --- domino tilings ----------------------------------------------------------


@dataclass(frozen=True)
class TilingParity:
    parity: int | None  # 0 even, 1 odd, None if untileable
    count: int
    white_parity: int


def domino_tilings(cells: Iterable[Cell]) -> Iterator[tuple[frozenset[Cell], ...]]:
    """Every tiling of ``cells`` by horizontal and vertical dominos."""
    cells = frozenset(cells)

    def rec(remaining: frozenset[Cell]) -> Iterator[tuple[frozenset[Cell], ...]]:
        if not remaining:
            yield ()
            return
        r, c = min(remaining)
        for other in ((r, c + 1), (r + 1, c)):
            if other in remaining:
                dom = frozenset({(r, c), other})
                for rest in rec(remaining - dom):
                    yield (dom,) + rest

    return rec(cells)


def domino_tiling_parity(shape: SkewShape) -> TilingParity:
    """Enumerate all domino tilings and check they share one parity.

    The parity is the number of vertical dominos mod 2; it is compared with
    the number of boxes in odd rows mod 2.
    """
    cells = shape.cells()
    white = sum(1 for r, _ in cells if r % 2) % 2
    parities = set()
    count = 0
    for tiling in domino_tilings(cells):
        count += 1
        parities.add(sum(1 for d in tiling if len({r for r, _ in d}) == 2) % 2)
    if count == 0:
        return TilingParity(None, 0, white)
    if len(parities) != 1:
        raise AssertionError(f"mixed tiling parities for {shape}")
    return TilingParity(parities.pop(), count, white)
