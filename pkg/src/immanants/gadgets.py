"""The four-vertex edge gadget: local states, verifier and search.

A gadget replaces an undirected host edge ``uv`` by a small digraph on the
endpoints ``u``, ``v`` and two private vertices ``a``, ``b``.  Two of its
arcs carry the host edge weight ``w``.  In a cycle cover of the host graph
the gadget sees one of six balanced "external degree" patterns at its
endpoints.  A gadget is valid when

* with both endpoints served from outside, the only surviving local state
  is the digon ``a <-> b`` of net weight ``-1`` (the passive state);
* with both endpoints served inside, the local states sum to ``2w`` on
  format ``(2,2)`` and ``2w`` on format ``(4)`` (four active states);
* in every mixed pattern, states with the same connection pattern and
  internal cycle format cancel exactly.

Vertices are numbered ``u=0, v=1, a=2, b=3``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .poly import Poly2, format_weight, parse_weight

U, V, A, B = 0, 1, 2, 3
NAMES = "uvab"
ARCS: tuple[tuple[int, int], ...] = tuple((p, q) for p in range(4) for q in range(4) if p != q)

# (e_in(u), e_out(u), e_in(v), e_out(v)) with external in-flow equal to out-flow
DEGREE_VECTORS: tuple[tuple[int, int, int, int], ...] = (
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (1, 1, 0, 0),
    (0, 0, 1, 1),
    (1, 0, 0, 1),
    (0, 1, 1, 0),
)
PASSIVE = (1, 1, 1, 1)
ACTIVE = (0, 0, 0, 0)

# Weight of a gadget arc: coefficient times w**power, power in {0, 1}.
ArcWeight = tuple[Fraction, int]


class GadgetError(ValueError):
    pass


class GadgetNotFound(RuntimeError):
    """No gadget passes verification inside the declared search space."""


@dataclass(frozen=True)
class EdgeGadget:
    arcs: tuple[tuple[int, int, Fraction, int], ...]  # (p, q, coefficient, power of w)

    def __post_init__(self) -> None:
        seen = set()
        for p, q, c, k in self.arcs:
            if (p, q) not in ARCS:
                raise GadgetError(f"bad arc ({p}, {q})")
            if (p, q) in seen:
                raise GadgetError(f"duplicate arc ({p}, {q})")
            if c == 0 or k not in (0, 1):
                raise GadgetError(f"bad weight on ({p}, {q})")
            seen.add((p, q))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @classmethod
    def from_weights(cls, weights: dict[tuple[int, int], ArcWeight]) -> "EdgeGadget":
        return cls(tuple((p, q, Fraction(c), k) for (p, q), (c, k) in weights.items()))

    @property
    def weights(self) -> dict[tuple[int, int], ArcWeight]:
        return {(p, q): (c, k) for p, q, c, k in self.arcs}

    @property
    def w_arcs(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q, _, k in self.arcs if k]

    def arc_weight(self, p: int, q: int, w) -> Poly2:
        """Weight of arc ``p -> q`` with the host edge weight ``w`` plugged in."""
        c, k = self.weights[(p, q)]
        return Poly2.coerce(w) * c if k else Poly2.const(c)

    def relabel(self, perm: Sequence[int]) -> "EdgeGadget":
        return EdgeGadget(tuple((perm[p], perm[q], c, k) for p, q, c, k in self.arcs))

    def swapped(self) -> "EdgeGadget":
        """Image under the simultaneous swaps u <-> v and a <-> b."""
        return self.relabel((V, U, B, A))

    def __str__(self) -> str:
        return " ".join(
            f"{NAMES[p]}{NAMES[q]}={format_weight(c, 'w' if k else '')}" for p, q, c, k in self.arcs
        )


@dataclass(frozen=True)
class LocalState:
    degrees: tuple[int, int, int, int]
    arcs: tuple[tuple[int, int], ...]
    paths: tuple[tuple[int, int, int], ...]  # (start, end, vertices on the path)
    format: tuple[int, ...]  # internal cycle lengths
    coefficient: Fraction
    w_power: int

    @property
    def key(self) -> tuple:
        return (self.paths, self.format)


def _check_degrees(degrees: Sequence[int]) -> tuple[int, int, int, int]:
    degrees = tuple(degrees)
    if len(degrees) != 4 or any(d not in (0, 1) for d in degrees):
        raise GadgetError(f"degree vector must be four 0/1 entries, got {degrees}")
    ein_u, eout_u, ein_v, eout_v = degrees
    if ein_u + ein_v != eout_u + eout_v:
        raise GadgetError(f"unbalanced degree vector {degrees}")
    return degrees


def _arc_subsets(degrees: tuple[int, int, int, int]) -> list[tuple[tuple[int, int], ...]]:
    """Arc subsets of the complete loopless digraph meeting the local degree demands."""
    ein_u, eout_u, ein_v, eout_v = degrees
    need_out = (1 - eout_u, 1 - eout_v, 1, 1)
    need_in = (1 - ein_u, 1 - ein_v, 1, 1)
    out = []
    for r in range(sum(need_out) + 1):
        for subset in itertools.combinations(ARCS, r):
            outd = [0] * 4
            ind = [0] * 4
            for p, q in subset:
                outd[p] += 1
                ind[q] += 1
            if tuple(outd) == need_out and tuple(ind) == need_in:
                out.append(subset)
    return out


_SUBSETS = {d: _arc_subsets(d) for d in DEGREE_VECTORS}


def _pattern(degrees, subset) -> tuple[tuple, tuple[int, ...]]:
    succ = dict(subset)
    ein = (degrees[0], degrees[2])
    seen = set()
    paths = []
    for start in (U, V):
        if not ein[start]:
            continue
        x, length = start, 1
        seen.add(x)
        while x in succ:
            x = succ[x]
            seen.add(x)
            length += 1
        paths.append((start, x, length))
    cycles = []
    for x in succ:
        if x in seen:
            continue
        length = 0
        while x not in seen:
            seen.add(x)
            x = succ[x]
            length += 1
        cycles.append(length)
    return tuple(sorted(paths)), tuple(sorted(cycles, reverse=True))


_KEYS = {d: [_pattern(d, s) for s in _SUBSETS[d]] for d in DEGREE_VECTORS}


def enumerate_local_states(gadget: EdgeGadget, degrees: Sequence[int]) -> list[LocalState]:
    """All arc subsets of ``gadget`` consistent with the external degrees."""
    degrees = _check_degrees(degrees)
    weights = gadget.weights
    states = []
    for subset, (paths, fmt) in zip(_SUBSETS[degrees], _KEYS[degrees]):
        if all(a in weights for a in subset):
            coeff, power = Fraction(1), 0
            for a in subset:
                c, k = weights[a]
                coeff *= c
                power += k
            states.append(LocalState(degrees, subset, paths, fmt, coeff, power))
    return states


def net_weights(states: Iterable[LocalState]) -> dict[tuple, dict[int, Fraction]]:
    """Sum states by (connection pattern, internal format); drop cancelled groups."""
    groups: dict[tuple, dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for s in states:
        groups[s.key][s.w_power] += s.coefficient
    out = {}
    for key, by_power in groups.items():
        net = {k: c for k, c in by_power.items() if c}
        if net:
            out[key] = net
    return out


EXPECTED_ACTIVE = {((), (2, 2)): {1: Fraction(2)}, ((), (4,)): {1: Fraction(2)}}
EXPECTED_PASSIVE_FORMAT = (2,)


def _degree_ok(degrees, nets) -> bool:
    if degrees == PASSIVE:
        return (
            len(nets) == 1
            and next(iter(nets))[1] == EXPECTED_PASSIVE_FORMAT
            and next(iter(nets.values())) == {0: Fraction(-1)}
        )
    if degrees == ACTIVE:
        return nets == EXPECTED_ACTIVE
    return not nets


@dataclass
class DegreeCheck:
    degrees: tuple[int, int, int, int]
    states: list[LocalState]
    nets: dict[tuple, dict[int, Fraction]]
    passed: bool


@dataclass
class GadgetReport:
    gadget: EdgeGadget
    checks: list[DegreeCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.problems) == 0 and all(c.passed for c in self.checks)

    @property
    def problems(self) -> list[str]:
        # list of problems with the w-arc count, empty when fine
        n = len(self.gadget.w_arcs)
        return [] if n == 2 else [f"expected 2 w-arcs, found {n}"]

    def lines(self) -> list[str]:
        out = [f"gadget {self.gadget}"]
        out += [f"problem: {p}" for p in self.problems]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            out.append(f"degrees {''.join(map(str, c.degrees))}: {len(c.states)} states, {status}")
            for (paths, fmt), net in sorted(c.nets.items()):
                shown = " + ".join(format_weight(v, {0: '', 1: 'w'}[k] if k < 2 else f"w^{k}") for k, v in sorted(net.items()))
                path_text = ",".join(f"{NAMES[s]}->{NAMES[e]}/{n}" for s, e, n in paths) or "-"
                out.append(f"  paths {path_text} cycles {fmt or '()'}: {shown}")
        out.append("PASS" if self.passed else "FAIL")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def verify_gadget(gadget: EdgeGadget) -> GadgetReport:
    report = GadgetReport(gadget)
    for degrees in DEGREE_VECTORS:
        states = enumerate_local_states(gadget, degrees)
        nets = net_weights(states)
        report.checks.append(DegreeCheck(degrees, states, nets, _degree_ok(degrees, nets)))
    return report


# --- search ------------------------------------------------------------------

# Arcs are assigned in this order so each degree check fires as soon as all
# arcs it can see are fixed: a<->b alone decides the passive pattern, the
# arcs avoiding u decide (1,1,0,0), and so on.
_SEARCH_ORDER = (
    (A, B), (B, A),
    (V, A), (A, V), (V, B), (B, V),
    (U, A), (A, U), (U, B), (B, U),
    (U, V), (V, U),
)


def _checks_after(order) -> list[list[tuple[int, int, int, int]]]:
    """For each prefix length, the degree vectors whose states only use assigned arcs."""
    fired = set()
    out = []
    for i in range(len(order) + 1):
        assigned = set(order[:i])
        now = []
        for d in DEGREE_VECTORS:
            if d in fired:
                continue
            if all(set(s) <= assigned for s in _SUBSETS[d]):
                fired.add(d)
                now.append(d)
        out.append(now)
    return out


_CHECKS_AFTER = _checks_after(_SEARCH_ORDER)


def _is_canonical(gadget: EdgeGadget) -> bool:
    return gadget.arcs <= gadget.swapped().arcs


def iter_gadgets(alphabet: Iterable) -> Iterable[EdgeGadget]:
    """Every verified gadget over ``alphabet`` (plus the two w-arcs ``+w``, ``-w``),
    one per symmetry class, in a fixed order."""
    letters = sorted({Fraction(c) for c in alphabet if Fraction(c) != 0}, key=lambda c: (abs(c), -c))
    values: list[ArcWeight | None] = [None] + [(c, 0) for c in letters] + [(Fraction(1), 1), (Fraction(-1), 1)]
    n = len(_SEARCH_ORDER)
    chosen: dict[tuple[int, int], ArcWeight] = {}

    def rec(i: int, w_count: int):
        for d in _CHECKS_AFTER[i]:
            nets = net_weights(enumerate_local_states(EdgeGadget.from_weights(chosen), d))
            if not _degree_ok(d, nets):
                return
        if i == n:
            if w_count == 2:
                g = EdgeGadget.from_weights(chosen)
                if _is_canonical(g):
                    yield g
            return
        arc = _SEARCH_ORDER[i]
        for value in values:
            k = value[1] if value else 0
            if w_count + k > 2 or w_count + k + (n - i - 1) < 2:
                continue
            if value is not None:
                chosen[arc] = value
            yield from rec(i + 1, w_count + k)
            chosen.pop(arc, None)

    if not letters:
        return
    yield from rec(0, 0)


def search_gadget(alphabet: Iterable) -> EdgeGadget:
    """First verified gadget in search order; raises :class:`GadgetNotFound`."""
    alphabet = list(alphabet)
    for g in iter_gadgets(alphabet):
        return g
    raise GadgetNotFound(f"no verified gadget with weights from {sorted(map(Fraction, alphabet))} and two w-arcs")


# --- fixture file ------------------------------------------------------------


def format_gadget(gadget: EdgeGadget) -> str:
    lines = ["gadget", "endpoints 0 1", "internals 2 3"]
    for p, q, c, k in gadget.arcs:
        lines.append(f"{p} {q} {format_weight(c, 'w' if k else '')}")
    return "\n".join(lines) + "\n"


def parse_gadget(text: str) -> EdgeGadget:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or rows[0] != ["gadget"]:
        raise GadgetError("missing 'gadget' header")
    names: dict[str, int] = {}
    body = rows[1:]
    for row in body[:2]:
        if row[0] == "endpoints" and len(row) == 3:
            names[row[1]], names[row[2]] = U, V
        elif row[0] == "internals" and len(row) == 3:
            names[row[1]], names[row[2]] = A, B
    if len(names) != 4:
        raise GadgetError("need 'endpoints' and 'internals' lines naming four distinct vertices")
    weights: dict[tuple[int, int], ArcWeight] = {}
    for row in body[2:]:
        if len(row) != 3:
            raise GadgetError(f"malformed arc line {' '.join(row)!r}")
        try:
            p, q = names[row[0]], names[row[1]]
        except KeyError as exc:
            raise GadgetError(f"unknown vertex {exc}") from None
        if (p, q) in weights:
            raise GadgetError(f"duplicate arc {row[0]} {row[1]}")
        c, sym = parse_weight(row[2], symbols="w")
        weights[(p, q)] = (c, 1 if sym == "w" else 0)
    return EdgeGadget.from_weights(weights)


FIXTURE = Path(__file__).with_name("data") / "gadget.txt"


def load_gadget(path: str | Path | None = None) -> EdgeGadget:
    return parse_gadget(Path(path or FIXTURE).read_text())


# --- placing gadgets in a host digraph ---------------------------------------


@dataclass(frozen=True)
class Placement:
    """A gadget copy inside a host graph: host vertices for u, v, a, b."""

    vertices: tuple[int, int, int, int]
    arcs: frozenset[tuple[int, int]]


def place_gadget(graph, gadget: EdgeGadget, u: int, v: int, w=1, labels: tuple[str, str] | None = None) -> Placement:
    """Add two fresh internal vertices and the gadget arcs to ``graph``."""
    la, lb = labels or (None, None)
    a = graph.add_vertex(la)
    b = graph.add_vertex(lb)
    host = (u, v, a, b)
    arcs = set()
    for p, q, _, _ in gadget.arcs:
        graph.add_arc(host[p], host[q], gadget.arc_weight(p, q, w))
        arcs.add((host[p], host[q]))
    return Placement(host, frozenset(arcs))


def consistency_filter(placements: Sequence[Placement]) -> Callable[[Sequence[int]], bool]:
    """Accept only covers in which every gadget is fully active or passive."""

    def accept(succ: Sequence[int]) -> bool:
        for pl in placements:
            u, v = pl.vertices[0], pl.vertices[1]
            inside = set()
            for x in pl.vertices:
                if (x, succ[x]) in pl.arcs:
                    inside.add(("out", x))
                    inside.add(("in", succ[x]))
            ends = {(d, x) in inside for d in ("in", "out") for x in (u, v)}
            if len(ends) != 1:
                return False
        return True

    return accept


def consistency_links(placements: Sequence[Placement]) -> list[tuple[tuple[int, int], frozenset]]:
    """Search-time form of :func:`consistency_filter` for ``cycle_cover_sums(linked=...)``."""
    return [((pl.vertices[0], pl.vertices[1]), pl.arcs) for pl in placements]
