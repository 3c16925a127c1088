"""Weighted digraphs, cycle covers and immanants.

The immanant of a digraph is the character-weighted sum over its cycle
covers.  Covers are found by a backtracking search that assigns one arc at
a time; it always branches on the vertex (or target) with the fewest
remaining options, so vertices with a single choice are filled in
immediately, and otherwise takes the lowest-index unassigned vertex with
arcs in target order.  Open paths are tracked so the cycle format is known
the moment the last arc is placed.
"""

from __future__ import annotations

import itertools
import math
import operator
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Collection, Iterator, Mapping, Sequence

import numpy as np

from .characters import character
from .linalg import bareiss_determinant, ryser_permanent, vandermonde_solve
from .partitions import Partition, PartitionError, as_partition
from .poly import Poly2


class GraphError(ValueError):
    pass


class WeightedDigraph:
    """Directed graph on ``0..n-1`` with nonzero :class:`Poly2` arc weights.

    Self-loops are allowed; at most one arc per ordered pair.
    """

    def __init__(self, n: int = 0, labels: Sequence[str] | None = None):
        self.n = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self._arcs: dict[tuple[int, int], Poly2] = {}

    def add_vertex(self, label: str | None = None) -> int:
        self.labels.append(label if label is not None else str(self.n))
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, weight=1) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"arc ({u}, {v}) out of range for n={self.n}")
        if (u, v) in self._arcs:
            raise GraphError(f"duplicate arc ({u}, {v})")
        weight = Poly2.coerce(weight)
        if weight.is_zero():
            raise GraphError(f"zero weight on arc ({u}, {v})")
        self._arcs[(u, v)] = weight

    def add_digon(self, u: int, v: int, weight_uv=1, weight_vu=1) -> None:
        self.add_arc(u, v, weight_uv)
        self.add_arc(v, u, weight_vu)

    def arcs(self) -> list[tuple[int, int, Poly2]]:
        return [(u, v, w) for (u, v), w in sorted(self._arcs.items())]

    def weight(self, u: int, v: int) -> Poly2:
        return self._arcs.get((u, v), Poly2())

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    @property
    def num_arcs(self) -> int:
        return len(self._arcs)

    def adjacency_matrix(self) -> list[list[Poly2]]:
        return [[self.weight(u, v) for v in range(self.n)] for u in range(self.n)]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "WeightedDigraph":
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise GraphError("matrix is not square")
        g = cls(n)
        for u, row in enumerate(matrix):
            for v, entry in enumerate(row):
                entry = Poly2.coerce(entry)
                if not entry.is_zero():
                    g.add_arc(u, v, entry)
        return g

    def substitute(self, x, y=0) -> "WeightedDigraph":
        """Copy with ``x`` and ``y`` replaced by numbers; vanishing arcs are dropped."""
        g = WeightedDigraph(self.n, self.labels)
        for (u, v), w in self._arcs.items():
            value = w.substitute(x, y)
            if value:
                g._arcs[(u, v)] = Poly2.const(value)
        return g

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, arcs={len(self._arcs)})"


@dataclass(frozen=True)
class CycleCover:
    successors: tuple[int, ...]
    format: Partition
    weight: Poly2

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.successors)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            v = self.successors[start]
            while v != start:
                cyc.append(v)
                seen.add(v)
                v = self.successors[v]
            out.append(tuple(cyc))
        return out


def cycle_format(successors: Sequence[int]) -> Partition:
    seen = [False] * len(successors)
    lengths = []
    for start in range(len(successors)):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = successors[v]
            length += 1
        lengths.append(length)
    return as_partition(lengths)


def _search(
    g: WeightedDigraph,
    weights: list[dict[int, object]],
    one,
    mul: Callable,
    on_leaf: Callable[[list[int], list[int], object], None],
    linked: Sequence[tuple[Sequence[int], Collection[tuple[int, int]]]] = (),
) -> None:
    """Depth-first search over all cycle covers.

    ``weights[u][v]`` is the weight of arc ``u -> v`` in whatever
    representation ``mul`` understands; ``on_leaf`` receives the successor
    array, the list of closed cycle lengths and the cover weight.

    Each ``(endpoints, arcs)`` entry of ``linked`` restricts the search to
    covers in which the in- and out-arcs of all listed endpoints are either
    all inside ``arcs`` or all outside; violating branches are cut as soon
    as two flags disagree.
    """
    n = g.n
    link_of: list[list[int]] = [[] for _ in range(n)]
    link_arcs = []
    for gi, (ends, arcset) in enumerate(linked):
        for e in ends:
            link_of[e].append(gi)
        link_arcs.append(frozenset(arcset))
    link_val = [0] * len(link_arcs)
    link_cnt = [0] * len(link_arcs)
    outs = [sorted(weights[u]) for u in range(n)]
    ins: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in outs[u]:
            ins[v].append(u)
    succ = [-1] * n
    pred = [-1] * n
    avail_out = [len(outs[u]) for u in range(n)]
    avail_in = [len(ins[v]) for v in range(n)]
    if n and (min(avail_out) == 0 or min(avail_in) == 0):
        return
    head = list(range(n))  # path end -> path start
    tail = list(range(n))  # path start -> path end
    plen = [1] * n
    cycles: list[int] = []
    done = 2 * n + 2

    def rec(assigned: int, weight) -> None:
        if assigned == n:
            on_leaf(succ, cycles, weight)
            return
        # Branch on the most constrained vertex or target.  Assigned entries
        # carry the offset ``done`` so the builtin min/index skip them; ties
        # go to the lowest index and vertices win over targets.
        best_count = min(avail_out)
        if best_count > 1:
            best_in = min(avail_in)
            if best_in < best_count:
                t = avail_in.index(best_in)
                options = [(p, t) for p in ins[t] if succ[p] < 0]
            else:
                p = avail_out.index(best_count)
                options = [(p, t) for t in outs[p] if pred[t] < 0]
        else:
            p = avail_out.index(best_count)
            options = [(p, t) for t in outs[p] if pred[t] < 0]
        for p, t in options:
            succ[p] = t
            pred[t] = p
            avail_out[p] += done
            avail_in[t] += done
            dead = False
            for t2 in outs[p]:
                if pred[t2] < 0:
                    avail_in[t2] -= 1
                    if avail_in[t2] == 0:
                        dead = True
            for p2 in ins[t]:
                if succ[p2] < 0:
                    avail_out[p2] -= 1
                    if avail_out[p2] == 0:
                        dead = True
            touched = []
            for groups in (link_of[p], link_of[t]):
                for gi in groups:
                    flag = (p, t) in link_arcs[gi]
                    if link_cnt[gi] == 0:
                        link_val[gi] = flag
                    elif link_val[gi] != flag:
                        dead = True
                    link_cnt[gi] += 1
                    touched.append(gi)
            s1 = head[p]
            closed = t == s1
            if closed:
                cycles.append(plen[s1])
            else:
                e2 = tail[t]
                saved = (e2, head[e2], tail[s1], plen[s1])
                head[e2] = s1
                tail[s1] = e2
                plen[s1] += plen[t]
            if not dead:
                rec(assigned + 1, mul(weight, weights[p][t]))
            for gi in touched:
                link_cnt[gi] -= 1
            if closed:
                cycles.pop()
            else:
                e2, h, tl, pl = saved
                head[e2] = h
                tail[s1] = tl
                plen[s1] = pl
            for p2 in ins[t]:
                if succ[p2] < 0:
                    avail_out[p2] += 1
            for t2 in outs[p]:
                if pred[t2] < 0:
                    avail_in[t2] += 1
            avail_out[p] -= done
            avail_in[t] -= done
            succ[p] = -1
            pred[t] = -1

    rec(0, one)


def _mono_mul(acc, w):
    return (acc[0] * w[0], acc[1] + w[1], acc[2] + w[2])


def enumerate_cycle_covers(g: WeightedDigraph) -> Iterator[CycleCover]:
    """Every cycle cover of ``g`` exactly once."""
    weights = [dict() for _ in range(g.n)]
    for u, v, w in g.arcs():
        weights[u][v] = w
    found: list[CycleCover] = []

    def leaf(succ, cycles, weight):
        found.append(CycleCover(tuple(succ), as_partition(cycles), weight))

    _search(g, weights, Poly2.const(1), lambda a, b: a * b, leaf)
    return iter(found)


def cycle_cover_sums(
    g: WeightedDigraph,
    accept: Callable[[Sequence[int]], bool] | None = None,
    linked: Sequence[tuple[Sequence[int], Collection[tuple[int, int]]]] = (),
) -> dict[Partition, Poly2]:
    """Total weight of the cycle covers of each format.

    ``accept`` optionally filters finished covers by their successor array;
    ``linked`` prunes during the search (see :func:`_search`).
    """
    if all(w.is_monomial() for _, _, w in g.arcs()):
        # Every cover uses exactly one out-arc per vertex, so scaling the
        # out-arcs of u by the lcm of their denominators keeps all products
        # integral; the total scale is divided out at the end.
        monos = [dict() for _ in range(g.n)]
        for u, v, w in g.arcs():
            ((a, b), c), = w.terms.items()
            monos[u][v] = (Fraction(c), a, b)
        scale = 1
        weights = [dict() for _ in range(g.n)]
        for u in range(g.n):
            row_scale = math.lcm(*(c.denominator for c, _, _ in monos[u].values())) if monos[u] else 1
            scale *= row_scale
            for v, (c, a, b) in monos[u].items():
                weights[u][v] = (int(c * row_scale), a, b)
        grouped: dict[Partition, dict] = defaultdict(lambda: defaultdict(int))
        if all(a == b == 0 for row in weights for _, a, b in row.values()):
            int_weights = [{v: c for v, (c, _, _) in row.items()} for row in weights]
            flat: dict[Partition, int] = defaultdict(int)

            def leaf(succ, cycles, weight):
                if accept is None or accept(succ):
                    flat[tuple(sorted(cycles, reverse=True))] += weight

            _search(g, int_weights, 1, operator.mul, leaf, linked)
            for fmt, c in flat.items():
                grouped[fmt][(0, 0)] = c
        else:
            acc: dict[tuple, int] = defaultdict(int)

            def leaf(succ, cycles, weight):
                if accept is None or accept(succ):
                    acc[(tuple(sorted(cycles, reverse=True)), weight[1], weight[2])] += weight[0]

            _search(g, weights, (1, 0, 0), _mono_mul, leaf, linked)
            for (fmt, a, b), c in acc.items():
                grouped[fmt][(a, b)] = c
        out = {fmt: Poly2({k: Fraction(c, scale) for k, c in terms.items()}) for fmt, terms in grouped.items()}
    else:
        weights = [dict() for _ in range(g.n)]
        for u, v, w in g.arcs():
            weights[u][v] = w
        poly_acc: dict[Partition, Poly2] = defaultdict(Poly2)

        def leaf(succ, cycles, weight):
            if accept is None or accept(succ):
                key = tuple(sorted(cycles, reverse=True))
                poly_acc[key] = poly_acc[key] + weight

        _search(g, weights, Poly2.const(1), lambda a, b: a * b, leaf, linked)
        out = dict(poly_acc)
    return {fmt: p for fmt, p in out.items() if not p.is_zero()}


def cc_sum(g: WeightedDigraph, rho: Sequence[int]) -> Poly2:
    """Weight sum over cycle covers of format exactly ``rho``."""
    rho = as_partition(rho)
    if sum(rho) != g.n:
        raise PartitionError(f"|{rho}| != {g.n} vertices")
    return cycle_cover_sums(g).get(rho, Poly2())


def immanant_from_sums(lam: Sequence[int], sums: Mapping[Partition, Poly2]) -> Poly2:
    total = Poly2()
    for fmt, p in sums.items():
        chi = character(lam, fmt)
        if chi:
            total = total + p * chi
    return total


def immanant(
    lam: Sequence[int],
    g: WeightedDigraph,
    accept: Callable[[Sequence[int]], bool] | None = None,
    linked: Sequence[tuple[Sequence[int], Collection[tuple[int, int]]]] = (),
) -> Poly2:
    """imm_lam(G): sum over cycle covers of chi_lam(format) times the cover weight.

    ``accept``/``linked`` restrict the covers (used for gadget-consistent sums).
    """
    lam = as_partition(lam)
    if sum(lam) != g.n:
        raise PartitionError(f"|{lam}| != {g.n} vertices")
    return immanant_from_sums(lam, cycle_cover_sums(g, accept, linked))


def matrix_immanant(lam: Sequence[int], matrix: Sequence[Sequence]) -> Poly2:
    return immanant(lam, WeightedDigraph.from_matrix(matrix))


def determinant(matrix: Sequence[Sequence]) -> Poly2:
    """Bareiss elimination for rational entries, Leibniz expansion otherwise."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise GraphError("matrix is not square")
    if all(Poly2.coerce(e).is_constant() for row in matrix for e in row):
        return Poly2.const(
            bareiss_determinant([[Poly2.coerce(e).constant() for e in row] for row in matrix])
        )
    rows = [[Poly2.coerce(e) for e in row] for row in matrix]
    total = Poly2()
    for perm in itertools.permutations(range(n)):
        term = Poly2.const(_perm_sign(perm))
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    return -1 if (len(perm) - len(cycle_format(perm))) % 2 else 1


def permanent(matrix: Sequence[Sequence]) -> Poly2:
    """Ryser's inclusion-exclusion formula over exact entries."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise GraphError("matrix is not square")
    return Poly2.coerce(ryser_permanent([[Poly2.coerce(e) for e in row] for row in matrix]))


def extract_coefficient(p: Poly2, a: int, b: int = 0) -> Fraction:
    return p.coefficient(a, b)


def interpolation_degrees(g: WeightedDigraph) -> tuple[int, int]:
    """Upper bounds on the x- and y-degree of any cover weight.

    Each vertex contributes one out-arc, so the bound is the number of
    vertices with at least one ``x`` (resp. ``y``) arc leaving them.
    """
    xs, ys = set(), set()
    for u, _, w in g.arcs():
        if not w.is_monomial() or set(w.terms) - {(0, 0), (1, 0), (0, 1)}:
            raise GraphError("interpolation needs weights c, c*x or c*y")
        ((a, b),) = w.terms
        if a:
            xs.add(u)
        if b:
            ys.add(u)
    return len(xs), len(ys)


def interpolate_immanant_coefficient(
    lam: Sequence[int],
    g: WeightedDigraph,
    a: int,
    b: int = 0,
    jobs: int = 1,
    linked: Sequence[tuple[Sequence[int], Collection[tuple[int, int]]]] = (),
) -> Fraction:
    """Coefficient of ``x^a y^b`` in imm_lam(G) from numeric evaluations.

    The immanant is evaluated at the integer grid ``0..dx`` by ``0..dy``
    (split over a process pool when ``jobs > 1``) and the two Vandermonde
    systems are solved exactly.  ``linked`` restricts the covers as in
    :func:`immanant`.
    """
    lam = as_partition(lam)
    dx, dy = interpolation_degrees(g)
    if a > dx or b > dy:
        return Fraction(0)
    xs = list(range(dx + 1))
    ys = list(range(dy + 1))
    points = [(xv, yv) for yv in ys for xv in xs]
    if jobs > 1 and len(points) > 1:
        size = -(-len(points) // jobs)
        chunks = [points[i:i + size] for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(evaluate_immanant_grid, [lam] * len(chunks), [g] * len(chunks), chunks,
                             [linked] * len(chunks))
            flat = [v for part in parts for v in part]
    else:
        flat = evaluate_immanant_grid(lam, g, points, linked)
    # coefficient of x^a as a polynomial in y, sampled at every y node
    coeff_a_at_y = []
    for i in range(len(ys)):
        values = flat[i * len(xs):(i + 1) * len(xs)]
        coeff_a_at_y.append(vandermonde_solve(xs, values)[a])
    return vandermonde_solve(ys, coeff_a_at_y)[b]


def evaluate_immanant_grid(
    lam: Sequence[int],
    g: WeightedDigraph,
    points: Sequence[tuple[int, int]],
    linked: Sequence[tuple[Sequence[int], Collection[tuple[int, int]]]] = (),
) -> list[Fraction]:
    """imm_lam(G(x, y)) at every point, with one cover search for all of them.

    Each arc carries the vector of its substituted values, one entry per
    point, so every cover adds its numeric weight at each point to the sum
    of its format.  Weights must be c, c*x or c*y.
    """
    lam = as_partition(lam)
    if sum(lam) != g.n:
        raise PartitionError(f"|{lam}| != {g.n} vertices")
    interpolation_degrees(g)  # validates the weights
    rows: list[dict[int, tuple]] = [dict() for _ in range(g.n)]
    for u, v, w in g.arcs():
        rows[u][v] = next(iter(w.terms.items()))
    weights = [dict() for _ in range(g.n)]
    scale = 1
    for u, coeffs in enumerate(rows):
        row_scale = math.lcm(*(c.denominator for _, c in coeffs.values())) if coeffs else 1
        scale *= row_scale
        for v, ((a, b), c) in coeffs.items():
            c = int(c * row_scale)
            weights[u][v] = np.array([c * xv ** a * yv ** b for xv, yv in points], dtype=object)
    acc: dict[Partition, np.ndarray] = {}

    def leaf(succ, cycles, weight):
        key = tuple(sorted(cycles, reverse=True))
        if key in acc:
            acc[key] += weight
        else:
            acc[key] = weight.copy()

    one = np.array([1] * len(points), dtype=object)
    _search(g, weights, one, operator.mul, leaf, linked)
    total = np.array([0] * len(points), dtype=object)
    for fmt, values in acc.items():
        chi = character(lam, fmt)
        if chi:
            total += chi * values
    return [Fraction(int(v), scale) for v in total]


# --- bipartite graphs and matchings ------------------------------------------


class BipartiteGraph:
    """Undirected bipartite graph with left vertices ``0..n_left-1`` and right ``0..n_right-1``."""

    def __init__(self, n_left: int = 0, n_right: int = 0):
        self.n_left = n_left
        self.n_right = n_right
        self._edges: dict[tuple[int, int], Poly2] = {}

    @property
    def n(self) -> int:
        return self.n_left + self.n_right

    def add_edge(self, left: int, right: int, weight=1) -> None:
        if not (0 <= left < self.n_left and 0 <= right < self.n_right):
            raise GraphError(f"edge ({left}, {right}) out of range")
        if (left, right) in self._edges:
            raise GraphError(f"duplicate edge ({left}, {right})")
        weight = Poly2.coerce(weight)
        if weight.is_zero():
            raise GraphError("zero edge weight")
        self._edges[(left, right)] = weight

    def edges(self) -> list[tuple[int, int, Poly2]]:
        return [(l, r, w) for (l, r), w in sorted(self._edges.items())]

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def max_degree(self) -> int:
        deg: dict[tuple[str, int], int] = defaultdict(int)
        for l, r in self._edges:
            deg[("L", l)] += 1
            deg[("R", r)] += 1
        return max(deg.values(), default=0)

    def copy(self) -> "BipartiteGraph":
        h = BipartiteGraph(self.n_left, self.n_right)
        h._edges = dict(self._edges)
        return h

    def add_isolated_edge(self, weight=1) -> None:
        self.n_left += 1
        self.n_right += 1
        self.add_edge(self.n_left - 1, self.n_right - 1, weight)

    def matchings(self, k: int) -> Iterator[tuple[tuple[int, int, Poly2], ...]]:
        for combo in itertools.combinations(self.edges(), k):
            lefts = {l for l, _, _ in combo}
            rights = {r for _, r, _ in combo}
            if len(lefts) == k and len(rights) == k:
                yield combo

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.n_left}+{self.n_right}, edges={len(self._edges)})"


def count_matchings(h: BipartiteGraph, k: int) -> Poly2:
    """#Match(H, k) by enumerating edge subsets."""
    total = Poly2()
    for combo in h.matchings(k):
        term = Poly2.const(1)
        for _, _, w in combo:
            term = term * w
        total = total + term
    return total


def count_perfect_matchings(h: BipartiteGraph) -> Poly2:
    if h.n % 2:
        raise GraphError("perfect matchings need an even number of vertices")
    if h.n_left != h.n_right:
        return Poly2()
    return count_matchings(h, h.n // 2)


def factorial(n: int) -> int:
    return math.factorial(n)
