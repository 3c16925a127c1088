"""Compiling matching counts into immanants.

Two routes are implemented.

*Staircase route.*  The staircase left after peeling all dominos from
``lam`` is used to host an alternating cycle structure: edges of ``H`` are
directed left to right, every right vertex points back to every left
vertex, and ``layers`` transit vertices close the cycles.  Only covers of
the onion format survive the character weighting.

*Tetromino route.*  Every edge of ``H`` becomes a copy of the edge gadget;
active gadgets give the 4-box formats ``(2,2)``/``(4)`` and passive ones a
digon of weight ``-1``.  The product of characters over these formats is
nonzero whenever ``lam`` has enough peelable non-vanishing tetrominos.

Both routes pad with digons and self-loops so that the vertex count is
exactly ``|lam|``; the budgets are asserted, never silently adjusted.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .characters import character, character_on_product, theta_product
from .digraph import (
    BipartiteGraph,
    WeightedDigraph,
    count_matchings,
    count_perfect_matchings,
    cycle_cover_sums,
    immanant_from_sums,
    interpolate_immanant_coefficient,
)
from .gadgets import EdgeGadget, Placement, consistency_links, load_gadget, place_gadget
from .partitions import Partition, as_partition, onion, stats, tetromino_number
from .poly import Poly2

STAIRCASE = "staircase"
TETROMINO = "tetromino"
ROUTES = (STAIRCASE, TETROMINO)


class InsufficientResources(ValueError):
    """The partition cannot host the requested instance on the chosen route(s)."""

    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


@dataclass
class ReductionOutput:
    graph: WeightedDigraph
    c: Fraction
    route: str
    problem: str  # "pm" or "match"
    lam: Partition
    target: str  # "value" or "coeff"
    x_deg: int = 0
    y_deg: int = 0
    k: int | None = None
    rho: Partition | None = None
    provenance: dict = field(default_factory=dict)
    placements: list[Placement] = field(default_factory=list)

    def __post_init__(self) -> None:
        assert self.graph.n == sum(self.lam), "vertex budget does not balance"
        assert self.c != 0

    def extract(self, imm: Poly2) -> Fraction:
        """The quantity the reduction promises: ``c`` times the value or coefficient."""
        if self.target == "value":
            return self.c * imm.constant()
        return self.c * imm.coefficient(self.x_deg, self.y_deg)


# --- staircase route ---------------------------------------------------------


def _staircase_layers(lam: Partition, need: int) -> int | None:
    w = stats(lam).w
    for layers in range(1, w // 2 + 1):
        if layers * (w - layers) >= need:
            return layers
    return None


def staircase_failures(h: BipartiteGraph, lam: Sequence[int], k: int | None = None) -> list[str]:
    """Violated preconditions of the staircase route (empty when buildable)."""
    lam = as_partition(lam)
    st = stats(lam)
    if k is None:
        if h.n % 2:
            return [f"H has an odd number of vertices ({h.n})"]
        need = h.n // 2
        layers = _staircase_layers(lam, need)
        if layers is None:
            return [f"no 1 <= l <= w/2 = {st.w}/2 with l(w-l) >= n/2 = {need}"]
        return []
    layers = _staircase_layers(lam, max(k, 1))
    if layers is None:
        return [f"no 1 <= l <= w/2 = {st.w}/2 with l(w-l) >= k = {k}"]
    ol = onion(lam, layers)
    khat = ol.accommodated_edges
    n_aug = h.n + 2 * (khat - k)
    theta = sum(ol.theta)
    out = []
    if st.z - theta < 2 * khat:
        out.append(f"z - |theta| = {st.z - theta} < 2*khat = {2 * khat}")
    if st.d < n_aug - 2 * khat:
        out.append(f"d = {st.d} < n_aug - 2*khat = {n_aug - 2 * khat}")
    return out


def _bipartite_core(g: WeightedDigraph, h: BipartiteGraph, layers: int) -> tuple[list[int], list[int]]:
    """Left/right vertices of ``h`` with the cycle-closing arcs and transit vertices."""
    left = [g.add_vertex(f"L{i}") for i in range(h.n_left)]
    right = [g.add_vertex(f"R{j}") for j in range(h.n_right)]
    for l, r, wt in h.edges():
        g.add_arc(left[l], right[r], wt)
    for r in right:
        for l in left:
            g.add_arc(r, l, 1)
    for t in range(layers):
        tv = g.add_vertex(f"T{t}")
        for r in right:
            g.add_arc(r, tv, 1)
        for l in left:
            g.add_arc(tv, l, 1)
    return left, right


def _pad(g: WeightedDigraph, digons: int, loops: int) -> None:
    assert digons >= 0 and loops >= 0, "negative padding"
    for i in range(digons):
        p = g.add_vertex(f"D{i}a")
        q = g.add_vertex(f"D{i}b")
        g.add_digon(p, q)
    for i in range(loops):
        p = g.add_vertex(f"O{i}")
        g.add_arc(p, p, 1)


def build_staircase_pm(h: BipartiteGraph, lam: Sequence[int]) -> ReductionOutput:
    lam = as_partition(lam)
    failures = staircase_failures(h, lam)
    if failures:
        raise InsufficientResources(failures)
    st = stats(lam)
    layers = _staircase_layers(lam, h.n // 2)
    ol = onion(lam, layers)
    padded = h.copy()
    extra = ol.accommodated_edges - h.n // 2
    for _ in range(extra):
        padded.add_isolated_edge(1)
    g = WeightedDigraph()
    _bipartite_core(g, padded, layers)
    _pad(g, st.d, st.z - sum(ol.theta))
    rho = ol.format
    chi = character(lam, rho)
    assert chi != 0, f"chi_{lam}({rho}) vanishes"
    c = Fraction(1, math.factorial(padded.n // 2)) / chi
    return ReductionOutput(
        g, c, STAIRCASE, "pm", lam, "value", rho=rho,
        provenance={"layers": layers, "padded_isolated_edges": extra, "padding_digons": st.d,
                    "padding_loops": st.z - sum(ol.theta)},
    )


def build_staircase_kmatch(h: BipartiteGraph, k: int, lam: Sequence[int]) -> ReductionOutput:
    """Target: ``c * [x^(2 khat) y^j] imm_lam(G) = #Match(H, k)``.

    The onion holds exactly ``khat`` matched edges, so ``j = khat - k``
    isolated edges of weight ``y`` are added; the ``y^j`` coefficient forces
    all of them into the matching.
    """
    lam = as_partition(lam)
    if k < 0:
        raise ValueError("k must be non-negative")
    failures = staircase_failures(h, lam, k)
    if failures:
        raise InsufficientResources(failures)
    st = stats(lam)
    layers = _staircase_layers(lam, max(k, 1))
    ol = onion(lam, layers)
    khat = ol.accommodated_edges
    slack = khat - k
    aug = h.copy()
    for _ in range(slack):
        aug.add_isolated_edge(Poly2.y())
    g = WeightedDigraph()
    left, right = _bipartite_core(g, aug, layers)
    for i, v in enumerate(left + right):
        s = g.add_vertex(f"S{g.labels[v]}")
        g.add_arc(s, s, Poly2.x())
        g.add_digon(v, s)
    digons = st.d - (aug.n - 2 * khat)
    loops = st.z - sum(ol.theta) - 2 * khat
    _pad(g, digons, loops)
    rho = ol.format
    chi = character(lam, rho)
    assert chi != 0, f"chi_{lam}({rho}) vanishes"
    c = Fraction(1, math.factorial(khat)) / chi
    return ReductionOutput(
        g, c, STAIRCASE, "match", lam, "coeff", x_deg=2 * khat, y_deg=slack, k=k, rho=rho,
        provenance={"layers": layers, "khat": khat, "padded_isolated_edges": slack,
                    "padding_digons": digons, "padding_loops": loops},
    )


# --- tetromino route ---------------------------------------------------------


def tetromino_failures(h: BipartiteGraph, lam: Sequence[int], k: int | None = None) -> list[str]:
    lam = as_partition(lam)
    st = stats(lam)
    s = tetromino_number(lam)[0]
    n, m = h.n, h.num_edges
    out = []
    if k is None:
        if n % 2:
            return [f"H has an odd number of vertices ({n})"]
        if s < n // 2:
            out.append(f"s = {s} < n/2 = {n // 2}")
        if st.d < n // 2 + m:
            out.append(f"d = {st.d} < n/2 + m = {n // 2 + m}")
    else:
        if s < 3 * k:
            out.append(f"s = {s} < 3k = {3 * k}")
        if st.d < m + n + 2 * k * n + k:
            out.append(f"d = {st.d} < m + n + 2kn + k = {m + n + 2 * k * n + k}")
    return out


def _gadget_host(g: WeightedDigraph, h: BipartiteGraph, gadget: EdgeGadget) -> tuple[list[int], list[Placement]]:
    host = [g.add_vertex(f"L{i}") for i in range(h.n_left)] + [g.add_vertex(f"R{j}") for j in range(h.n_right)]
    placements = []
    for e, (l, r, wt) in enumerate(h.edges()):
        placements.append(place_gadget(g, gadget, host[l], host[h.n_left + r], wt, (f"E{e}a", f"E{e}b")))
    return host, placements


def build_tetromino_pm(h: BipartiteGraph, lam: Sequence[int], gadget: EdgeGadget | None = None) -> ReductionOutput:
    lam = as_partition(lam)
    failures = tetromino_failures(h, lam)
    if failures:
        raise InsufficientResources(failures)
    gadget = gadget or load_gadget()
    st = stats(lam)
    n, m = h.n, h.num_edges
    g = WeightedDigraph()
    _, placements = _gadget_host(g, h, gadget)
    digons = st.d - (n // 2 + m)
    _pad(g, digons, st.z)
    chi = character_on_product(lam, theta_product(lam, n // 2))
    assert chi != 0, f"chi_{lam}(theta_{n // 2}) vanishes"
    c1 = (-1) ** (m - n // 2) * 2 ** (n // 2) * chi
    return ReductionOutput(
        g, Fraction(1) / c1, TETROMINO, "pm", lam, "value",
        provenance={"padded_isolated_edges": 0, "padding_digons": digons, "padding_loops": st.z, "c1": c1},
        placements=placements,
    )


def build_tetromino_kmatch(
    h: BipartiteGraph, k: int, lam: Sequence[int], gadget: EdgeGadget | None = None
) -> ReductionOutput:
    lam = as_partition(lam)
    if k < 0:
        raise ValueError("k must be non-negative")
    failures = tetromino_failures(h, lam, k)
    if failures:
        raise InsufficientResources(failures)
    gadget = gadget or load_gadget()
    st = stats(lam)
    n, m = h.n, h.num_edges
    g = WeightedDigraph()
    host, placements = _gadget_host(g, h, gadget)
    switches = []
    for v in host:
        s = g.add_vertex(f"S{g.labels[v]}")
        g.add_digon(v, s)
        switches.append(s)
    for i in range(2 * k):
        r = g.add_vertex(f"Q{i}")
        for j, s in enumerate(switches):
            placements.append(place_gadget(g, gadget, r, s, 1, (f"Q{i}S{j}a", f"Q{i}S{j}b")))
    digons = st.d - (m + n + 2 * k * n + k)
    _pad(g, digons, st.z)
    # digon budget of theta_{3k}: switch + passive + padding digons
    assert (n - 2 * k) + (m + 2 * k * n - 3 * k) + digons == st.d - 6 * k
    chi = character_on_product(lam, theta_product(lam, 3 * k))
    assert chi != 0, f"chi_{lam}(theta_{3 * k}) vanishes"
    c2 = (-1) ** (m + 2 * k * n - 3 * k) * math.factorial(2 * k) * 2 ** (3 * k) * chi
    return ReductionOutput(
        g, Fraction(1) / c2, TETROMINO, "match", lam, "value", k=k,
        provenance={"padded_isolated_edges": 0, "padding_digons": digons, "padding_loops": st.z,
                    "receptors": 2 * k, "c2": c2},
        placements=placements,
    )


# --- route choice and certification -----------------------------------------


def choose_route(h: BipartiteGraph, lam: Sequence[int], k: int | None = None) -> str:
    """Tetromino when it applies (no coefficient extraction needed), else staircase."""
    tet = tetromino_failures(h, lam, k)
    if not tet:
        return TETROMINO
    stair = staircase_failures(h, lam, k)
    if not stair:
        return STAIRCASE
    raise InsufficientResources([f"tetromino: {f}" for f in tet] + [f"staircase: {f}" for f in stair])


def build(h: BipartiteGraph, lam: Sequence[int], k: int | None = None, route: str = "auto") -> ReductionOutput:
    """Dispatch on route; ``k=None`` means perfect matchings."""
    if route == "auto":
        route = choose_route(h, lam, k)
    if route == STAIRCASE:
        return build_staircase_pm(h, lam) if k is None else build_staircase_kmatch(h, k, lam)
    if route == TETROMINO:
        return build_tetromino_pm(h, lam) if k is None else build_tetromino_kmatch(h, k, lam)
    raise ValueError(f"unknown route {route!r}")


@dataclass
class Certificate:
    expected: Fraction
    direct: Fraction
    interpolated: Fraction | None
    format_filter: bool | None  # staircase route only
    consistent: bool | None  # tetromino route with full enumeration only
    immanant: Poly2
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return (
            self.direct == self.expected
            and self.interpolated in (None, self.expected)
            and self.format_filter is not False
            and self.consistent is not False
        )

    def lines(self) -> list[str]:
        out = [
            f"brute force   {self.expected}",
            f"direct        {self.direct}" + ("" if self.exhaustive else " (gadget-consistent covers)"),
            f"interpolated  {'skipped' if self.interpolated is None else self.interpolated}",
        ]
        if self.format_filter is not None:
            out.append(f"format filter {'ok' if self.format_filter else 'FAIL'}")
        if self.consistent is not None:
            out.append(f"consistency   {'ok' if self.consistent else 'FAIL'}")
        out.append("PASS" if self.passed else "FAIL")
        return out


def _format_filter_holds(out: ReductionOutput, sums) -> bool:
    """Covers with nonzero character, at least d digons and the prescribed
    number of loops must have exactly the onion format."""
    d = stats(out.lam).d
    loops = Counter(out.rho)[1]
    for fmt in sums:
        cnt = Counter(fmt)
        if character(out.lam, fmt) and cnt[2] >= d and cnt[1] == loops and fmt != out.rho:
            return False
    return True


def certify(
    out: ReductionOutput,
    h: BipartiteGraph,
    interpolate: bool = True,
    exhaustive: bool = True,
    jobs: int = 1,
) -> Certificate:
    """Compare brute-force matching counts with the immanant side.

    The immanant is computed symbolically over all cycle covers and, when
    ``interpolate`` is set, again from numeric evaluations.  On the
    tetromino route the sum over gadget-consistent covers is computed too
    and must agree with the full sum; with ``exhaustive=False`` only the
    consistent covers are enumerated (for instances whose full cover set is
    out of reach).
    """
    if out.problem == "pm":
        expected = count_perfect_matchings(h).constant()
    else:
        expected = count_matchings(h, out.k).constant()
    links = consistency_links(out.placements) if out.route == TETROMINO else []
    if not exhaustive and not links:
        raise ValueError("non-exhaustive certification needs gadget placements")
    consistent = None
    if exhaustive:
        sums = cycle_cover_sums(out.graph)
        imm = immanant_from_sums(out.lam, sums)
        if links:
            consistent = immanant_from_sums(out.lam, cycle_cover_sums(out.graph, linked=links)) == imm
    else:
        sums = cycle_cover_sums(out.graph, linked=links)
        imm = immanant_from_sums(out.lam, sums)
    direct = out.extract(imm)
    interpolated = None
    if interpolate:
        coeff = interpolate_immanant_coefficient(
            out.lam, out.graph, out.x_deg, out.y_deg, jobs=jobs, linked=() if exhaustive else links
        )
        interpolated = out.c * coeff
    format_filter = _format_filter_holds(out, sums) if out.route == STAIRCASE else None
    return Certificate(expected, direct, interpolated, format_filter, consistent, imm, exhaustive)
