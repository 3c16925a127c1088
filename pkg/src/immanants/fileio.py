"""Text formats for digraphs, bipartite graphs and reduction metadata.

Graph files are UTF-8 lines with ``#`` comments.  A digraph starts with
``digraph <n>`` followed by ``u v <weight>`` lines; a bipartite graph starts
with ``bigraph <nL> <nR>`` followed by ``l r <weight>`` lines.  Weights are
rationals with an optional ``x`` or ``y`` suffix (``3x``, ``-1/2``, ``2y``).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .digraph import BipartiteGraph, GraphError, WeightedDigraph
from .partitions import format_partition, parse_partition
from .poly import Poly2, format_weight, parse_weight, weight_to_poly


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((number, line.split()))
    return out


def _weight(token: str, number: int) -> Poly2:
    try:
        return weight_to_poly(*parse_weight(token))
    except ValueError as exc:
        raise GraphError(f"line {number}: {exc}") from None


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"line {number}: expected an integer, got {token!r}") from None


def _monomial_text(w: Poly2) -> str:
    if not w.is_monomial():
        raise GraphError(f"weight {w} is not a single monomial")
    ((a, b), c), = w.terms.items()
    if (a, b) == (0, 0):
        return format_weight(c)
    if (a, b) == (1, 0):
        return format_weight(c, "x")
    if (a, b) == (0, 1):
        return format_weight(c, "y")
    raise GraphError(f"weight {w} cannot be written in the graph format")


def parse_digraph(text: str) -> WeightedDigraph:
    rows = _lines(text)
    if not rows or rows[0][1][0] != "digraph" or len(rows[0][1]) != 2:
        raise GraphError("expected 'digraph <n>' header")
    g = WeightedDigraph(_int(rows[0][1][1], rows[0][0]))
    for number, fields in rows[1:]:
        if len(fields) != 3:
            raise GraphError(f"line {number}: expected 'u v weight'")
        u, v = _int(fields[0], number), _int(fields[1], number)
        try:
            g.add_arc(u, v, _weight(fields[2], number))
        except GraphError as exc:
            raise GraphError(f"line {number}: {exc}") from None
    return g


def format_digraph(g: WeightedDigraph) -> str:
    lines = [f"digraph {g.n}"]
    lines += [f"{u} {v} {_monomial_text(w)}" for u, v, w in g.arcs()]
    return "\n".join(lines) + "\n"


def parse_bigraph(text: str) -> BipartiteGraph:
    rows = _lines(text)
    if not rows or rows[0][1][0] != "bigraph" or len(rows[0][1]) != 3:
        raise GraphError("expected 'bigraph <nL> <nR>' header")
    number, header = rows[0]
    h = BipartiteGraph(_int(header[1], number), _int(header[2], number))
    for number, fields in rows[1:]:
        if len(fields) != 3:
            raise GraphError(f"line {number}: expected 'l r weight'")
        l, r = _int(fields[0], number), _int(fields[1], number)
        try:
            h.add_edge(l, r, _weight(fields[2], number))
        except GraphError as exc:
            raise GraphError(f"line {number}: {exc}") from None
    return h


def format_bigraph(h: BipartiteGraph) -> str:
    lines = [f"bigraph {h.n_left} {h.n_right}"]
    lines += [f"{l} {r} {_monomial_text(w)}" for l, r, w in h.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> WeightedDigraph | BipartiteGraph:
    text = Path(path).read_text(encoding="utf-8")
    rows = _lines(text)
    if rows and rows[0][1][0] == "bigraph":
        return parse_bigraph(text)
    return parse_digraph(text)


# --- reduction metadata ------------------------------------------------------

META_KEYS = ("route", "problem", "k", "lambda", "c", "target", "x_deg", "y_deg", "rho", "padded_isolated_edges")


def format_meta(out) -> str:
    values = {
        "route": out.route,
        "problem": out.problem,
        "k": "" if out.k is None else str(out.k),
        "lambda": format_partition(out.lam),
        "c": str(out.c),
        "target": out.target,
        "x_deg": str(out.x_deg),
        "y_deg": str(out.y_deg),
        "rho": "" if out.rho is None else format_partition(out.rho),
        "padded_isolated_edges": str(out.provenance.get("padded_isolated_edges", 0)),
    }
    return "".join(f"{key}={values[key]}\n" for key in META_KEYS)


def parse_meta(text: str) -> dict:
    raw = {}
    for number, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {number}: expected key=value")
        key, value = line.split("=", 1)
        raw[key.strip()] = value.strip()
    missing = [k for k in ("route", "problem", "lambda", "c", "target") if k not in raw]
    if missing:
        raise ValueError(f"metadata is missing {', '.join(missing)}")
    return {
        "route": raw["route"],
        "problem": raw["problem"],
        "k": int(raw["k"]) if raw.get("k") else None,
        "lambda": parse_partition(raw["lambda"]),
        "c": Fraction(raw["c"]),
        "target": raw["target"],
        "x_deg": int(raw.get("x_deg") or 0),
        "y_deg": int(raw.get("y_deg") or 0),
        "rho": parse_partition(raw["rho"]) if raw.get("rho") else None,
        "padded_isolated_edges": int(raw.get("padded_isolated_edges") or 0),
    }


GRAPH_FILE = "graph.digraph"
INPUT_FILE = "input.bigraph"
META_FILE = "meta.txt"


def write_reduction(out, h: BipartiteGraph, directory: str | Path) -> Path:
    """Write the built graph, its metadata and the source bipartite graph."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / GRAPH_FILE).write_text(format_digraph(out.graph), encoding="utf-8")
    (directory / META_FILE).write_text(format_meta(out), encoding="utf-8")
    (directory / INPUT_FILE).write_text(format_bigraph(h), encoding="utf-8")
    return directory


def read_reduction(directory: str | Path) -> tuple[WeightedDigraph, dict, BipartiteGraph]:
    directory = Path(directory)
    g = parse_digraph((directory / GRAPH_FILE).read_text(encoding="utf-8"))
    meta = parse_meta((directory / META_FILE).read_text(encoding="utf-8"))
    h = parse_bigraph((directory / INPUT_FILE).read_text(encoding="utf-8"))
    return g, meta, h
