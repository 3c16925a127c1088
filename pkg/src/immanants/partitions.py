"""Integer partitions, skew shapes and domino/tetromino peeling.

Partitions are plain tuples of positive integers in non-increasing order,
so they hash and memoize cheaply.  Boxes are addressed as ``(row, col)``
with both indices starting at 0 in the north-west corner.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
Cell = tuple[int, int]


class PartitionError(ValueError):
    pass


class DichotomyViolation(RuntimeError):
    """Raised when neither resource bound holds for a partition."""


def as_partition(parts: Iterable[int]) -> Partition:
    """Canonicalize ``parts``: drop zeros, sort non-increasingly."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise PartitionError(f"negative part in {parts}")
    return tuple(sorted((p for p in parts if p), reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


_COMPACT = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``4,4,3,3,3,2`` or the compact form ``4^2,3^3,2``.

    Input must already be non-increasing; ``""`` and ``()`` give the empty
    partition.
    """
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text.strip():
        return ()
    parts: list[int] = []
    for token in text.split(","):
        m = _COMPACT.match(token)
        if not m:
            raise PartitionError(f"malformed partition token {token!r}")
        value = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) is not None else 1
        if value <= 0:
            raise PartitionError(f"non-positive part in {text!r}")
        parts.extend([value] * reps)
    if not is_partition(parts):
        raise PartitionError(f"parts of {text!r} are not non-increasing")
    return tuple(parts)


def format_partition(lam: Sequence[int], compact: bool = False) -> str:
    if not compact:
        return ",".join(str(p) for p in lam)
    out = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        out.append(f"{lam[i]}^{j - i}" if j - i > 1 else str(lam[i]))
        i = j
    return ",".join(out)


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, cap), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def cells_of(lam: Sequence[int]) -> frozenset[Cell]:
    return frozenset((r, c) for r, row in enumerate(lam) for c in range(row))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """True iff ``inner`` fits rowwise inside ``outer`` (zero padded)."""
    if len(inner) > len(outer) and any(inner[len(outer):]):
        return False
    return all(i <= o for i, o in zip(inner, outer))


def is_staircase(lam: Sequence[int]) -> bool:
    return tuple(lam) == tuple(range(len(lam), 0, -1))


def staircase(width: int) -> Partition:
    return tuple(range(width, 0, -1))


def boxes_right_of_first_column(lam: Sequence[int]) -> int:
    return sum(lam) - len(lam)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "outer", as_partition(self.outer))
        object.__setattr__(self, "inner", as_partition(self.inner))
        if not contains(self.outer, self.inner):
            raise PartitionError(f"{self.inner} is not contained in {self.outer}")

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> "SkewShape":
        """Skew shape with box set ``cells`` translated to the origin.

        Every row between the first and last must be occupied.
        """
        cells = _translate(cells)
        if not cells:
            return cls(())
        outer, inner = [], []
        for r in range(max(r for r, _ in cells) + 1):
            cols = sorted(c for rr, c in cells if rr == r)
            if not cols or cols != list(range(cols[0], cols[-1] + 1)):
                raise PartitionError("rows of a skew shape must be contiguous and nonempty")
            outer.append(cols[-1] + 1)
            inner.append(cols[0])
        if not (is_partition(outer) and all(
            inner[i] >= inner[i + 1] for i in range(len(inner) - 1)
        )):
            raise PartitionError("cells do not form a skew shape")
        return cls(tuple(outer), tuple(inner))

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def cells(self) -> frozenset[Cell]:
        inner = list(self.inner) + [0] * (len(self.outer) - len(self.inner))
        return frozenset(
            (r, c) for r, row in enumerate(self.outer) for c in range(inner[r], row)
        )

    def canonical(self) -> frozenset[Cell]:
        return canonical_cells(self.cells())

    def __str__(self) -> str:
        if not self.inner:
            return f"({format_partition(self.outer)})"
        return f"({format_partition(self.outer)})/({format_partition(self.inner)})"


def _translate(cells: Iterable[Cell]) -> frozenset[Cell]:
    cells = frozenset(cells)
    if not cells:
        return cells
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return frozenset((r - r0, c - c0) for r, c in cells)


def canonical_cells(cells: Iterable[Cell]) -> frozenset[Cell]:
    """Delete empty rows and columns, then translate to the origin."""
    cells = frozenset(cells)
    rows = {r: i for i, r in enumerate(sorted({r for r, _ in cells}))}
    cols = {c: i for i, c in enumerate(sorted({c for _, c in cells}))}
    return frozenset((rows[r], cols[c]) for r, c in cells)


def shape_from_diagram(spec: str) -> frozenset[Cell]:
    """Cells of a ``ydiagram``-style description such as ``2+1,2+1,1,1``."""
    cells = set()
    for r, token in enumerate(spec.split(",")):
        if "+" in token:
            offset, length = (int(t) for t in token.split("+"))
        else:
            offset, length = 0, int(token)
        cells.update((r, offset + c) for c in range(length))
    return frozenset(cells)


def diagram_of(cells: Iterable[Cell]) -> str:
    """Inverse of :func:`shape_from_diagram` for canonical cell sets."""
    cells = frozenset(cells)
    rows = []
    for r in range(max(r for r, _ in cells) + 1):
        cols = sorted(c for rr, c in cells if rr == r)
        rows.append(f"{cols[0]}+{len(cols)}" if cols[0] else str(len(cols)))
    return ",".join(rows)


def connected_components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """Edge-connected components of a cell set."""
    todo = set(cells)
    comps = []
    while todo:
        stack = [todo.pop()]
        comp = set(stack)
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in todo:
                    todo.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(frozenset(comp))
    return comps


# --- dominos -----------------------------------------------------------------


@dataclass(frozen=True)
class Domino:
    row: int
    col: int
    vertical: bool

    @property
    def cells(self) -> frozenset[Cell]:
        if self.vertical:
            return frozenset({(self.row, self.col), (self.row + 1, self.col)})
        return frozenset({(self.row, self.col), (self.row, self.col + 1)})


def peel_domino(lam: Sequence[int]) -> list[tuple[Domino, Partition]]:
    """Every single-domino removal from the south-eastern border of ``lam``."""
    lam = tuple(lam)
    out = []
    n = len(lam)
    for i in range(n):
        below = lam[i + 1] if i + 1 < n else 0
        if lam[i] - 2 >= below:
            rest = list(lam)
            rest[i] -= 2
            out.append((Domino(i, lam[i] - 2, False), as_partition(rest)))
        if i + 1 < n and lam[i] == lam[i + 1]:
            below2 = lam[i + 2] if i + 2 < n else 0
            if lam[i + 1] - 1 >= below2:
                rest = list(lam)
                rest[i] -= 1
                rest[i + 1] -= 1
                out.append((Domino(i, lam[i] - 1, True), as_partition(rest)))
    return out


@dataclass(frozen=True)
class Peel:
    kind: str  # domino | tetromino | strip | singleton
    cells: frozenset[Cell]


@dataclass(frozen=True)
class PeelSequence:
    start: Partition
    peels: tuple[Peel, ...] = ()

    def __len__(self) -> int:
        return len(self.peels)

    def shapes(self) -> Iterator[Partition]:
        """Replay the peels, yielding each intermediate partition.

        Raises :class:`PartitionError` if a peel is not a legal removal.
        """
        current = cells_of(self.start)
        yield self.start
        for peel in self.peels:
            if not peel.cells <= current:
                raise PartitionError(f"peel {sorted(peel.cells)} not inside shape")
            current = current - peel.cells
            rows = [sum(1 for r, _ in current if r == i) for i in range(len(self.start))]
            lam = tuple(x for x in rows if x)
            if not is_partition(lam) or cells_of(lam) != current:
                raise PartitionError("peel leaves an invalid partition")
            yield lam

    @property
    def end(self) -> Partition:
        *_, last = self.shapes()
        return last


@dataclass(frozen=True)
class PartitionStats:
    partition: Partition
    b: int
    d: int
    z: int
    w: int
    staircase: Partition
    peel_certificate: PeelSequence = field(compare=False)


def two_core(lam: Sequence[int], rng: random.Random | None = None) -> PartitionStats:
    """Peel dominos until none is removable.

    With ``rng`` the domino to remove is chosen at random at every step;
    otherwise the first removable domino (top row first) is taken.
    """
    lam = tuple(lam)
    current = lam
    peels = []
    while True:
        options = peel_domino(current)
        if not options:
            break
        dom, current = rng.choice(options) if rng is not None else options[0]
        peels.append(Peel("domino", dom.cells))
    w = len(current)
    if not is_staircase(current):
        raise AssertionError(f"2-core of {lam} is not a staircase: {current}")
    return PartitionStats(
        partition=lam,
        b=boxes_right_of_first_column(lam),
        d=len(peels),
        z=w * (w + 1) // 2,
        w=w,
        staircase=current,
        peel_certificate=PeelSequence(lam, tuple(peels)),
    )


@lru_cache(maxsize=None)
def stats(lam: Partition) -> PartitionStats:
    return two_core(lam)


def domino_number(lam: Sequence[int]) -> int:
    return stats(tuple(lam)).d


# --- tetrominos --------------------------------------------------------------


TETROMINO_FORMATS: tuple[Partition, ...] = ((2, 2), (4,))


def _disjoint_rows_cols(a: frozenset[Cell], b: frozenset[Cell]) -> bool:
    return not ({r for r, _ in a} & {r for r, _ in b}) and not (
        {c for _, c in a} & {c for _, c in b}
    )


def _corner_only(a: frozenset[Cell], b: frozenset[Cell]) -> bool:
    """True when the two dominos meet diagonally but share no edge."""
    edge = any(abs(r1 - r2) + abs(c1 - c2) == 1 for r1, c1 in a for r2, c2 in b)
    corner = any(abs(r1 - r2) == 1 and abs(c1 - c2) == 1 for r1, c1 in a for r2, c2 in b)
    return corner and not edge


@lru_cache(maxsize=None)
def peel_nonvanishing_tetromino(lam: Partition) -> tuple[tuple[SkewShape, Partition], ...]:
    """All ways to peel a non-vanishing tetromino from ``lam``.

    Two dominos are removed in succession; the union ``lam/rest`` qualifies
    when its tetromino coefficient is nonzero.  Results are deduplicated by
    the remainder, which determines the removed shape.
    """
    from .characters import tetromino_alpha

    lam = tuple(lam)
    found: dict[Partition, SkewShape] = {}
    for d1, mid in peel_domino(lam):
        for d2, rest in peel_domino(mid):
            if rest in found:
                continue
            if _corner_only(d1.cells, d2.cells) and not _disjoint_rows_cols(d1.cells, d2.cells):
                continue
            gamma = SkewShape(lam, rest)
            if tetromino_alpha(gamma.canonical()) != 0:
                found[rest] = gamma
    return tuple((gamma, rest) for rest, gamma in found.items())


@lru_cache(maxsize=None)
def _tetromino_dfs(lam: Partition) -> tuple[int, tuple[Peel, ...]]:
    best: tuple[int, tuple[Peel, ...]] = (0, ())
    for gamma, rest in peel_nonvanishing_tetromino(lam):
        count, peels = _tetromino_dfs(rest)
        if count + 1 > best[0]:
            best = (count + 1, (Peel("tetromino", gamma.cells()),) + peels)
    return best


def tetromino_number(lam: Sequence[int]) -> tuple[int, PeelSequence]:
    """Maximum number of non-vanishing tetrominos peelable in succession.

    Exact search with memoization on partitions; exponential in general,
    fine for a few dozen boxes.
    """
    lam = tuple(lam)
    count, peels = _tetromino_dfs(lam)
    return count, PeelSequence(lam, peels)


# --- onions ------------------------------------------------------------------


@dataclass(frozen=True)
class OnionFormat:
    partition: Partition
    layers: int
    theta: Partition
    format: Partition
    accommodated_edges: int
    strips: PeelSequence = field(compare=False)


def _longest_rim_hook(lam: Partition) -> tuple[Partition, frozenset[Cell]]:
    from .characters import rim_hooks

    best = None
    for k in range(sum(lam), 0, -1):
        hooks = list(rim_hooks(lam, k))
        if hooks:
            best = hooks[0]
            break
    if best is None:
        raise PartitionError("no border strip in empty shape")
    rest, _height = best
    return rest, cells_of(lam) - cells_of(rest)


def onion(lam: Sequence[int], layers: int) -> OnionFormat:
    """The ``layers``-layer onion format of ``lam``.

    Peels ``layers`` maximal border strips off the staircase of ``lam``; the
    format is ``(2^d, theta, 1^(z - |theta|))``.
    """
    lam = tuple(lam)
    st = stats(lam)
    if layers < 0 or 2 * layers > st.w:
        raise PartitionError(
            f"onion needs 0 <= layers <= w/2, got layers={layers}, w={st.w}"
        )
    current = st.staircase
    theta = []
    peels = []
    for i in range(layers):
        current, cells = _longest_rim_hook(current)
        if len(cells) != 2 * (st.w - 2 * i) - 1:
            raise AssertionError("staircase strip length mismatch")
        theta.append(len(cells))
        peels.append(Peel("strip", cells))
    theta_t = tuple(theta)
    fmt = as_partition([2] * st.d + theta + [1] * (st.z - sum(theta)))
    return OnionFormat(
        partition=lam,
        layers=layers,
        theta=theta_t,
        format=fmt,
        accommodated_edges=layers * (st.w - layers),
        strips=PeelSequence(st.staircase, tuple(peels)),
    )


# --- resource dichotomy ------------------------------------------------------


@dataclass(frozen=True)
class Dichotomy:
    partition: Partition
    s: int
    w: int
    b: int
    tetromino_bound: bool  # 8 s >= b
    staircase_bound: bool  # (w + 1)^2 >= b
    witness: PeelSequence | Partition = field(compare=False)


def resource_dichotomy(lam: Sequence[int]) -> Dichotomy:
    """Check that ``s >= b/8`` or ``w >= sqrt(b) - 1`` holds for ``lam``.

    The witness is the tetromino peel sequence when the first bound holds,
    else the staircase.
    """
    lam = tuple(lam)
    st = stats(lam)
    s, seq = tetromino_number(lam)
    tet = 8 * s >= st.b
    stair = (st.w + 1) ** 2 >= st.b
    if not (tet or stair):
        raise DichotomyViolation(f"s={s}, w={st.w}, b={st.b} for {lam}")
    return Dichotomy(lam, s, st.w, st.b, tet, stair, seq if tet else st.staircase)
