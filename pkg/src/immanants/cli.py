"""Command-line interface: ``immanants <command> ...``.

All numbers are printed exactly; output is deterministic.  The exit code
is 0 on success and nonzero on malformed input, unmet preconditions or a
failed check.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .characters import (
    character,
    character_on_product,
    character_table,
    domino_tiling_parity,
    theta_product,
)
from .digraph import BipartiteGraph, GraphError, WeightedDigraph, immanant
from .fileio import (
    format_digraph,
    read_graph,
    read_reduction,
    write_reduction,
)
from .gadgets import GadgetError, GadgetNotFound, format_gadget, load_gadget, search_gadget, verify_gadget
from .partitions import (
    DichotomyViolation,
    PartitionError,
    SkewShape,
    format_partition,
    onion,
    parse_partition,
    partitions_of,
    resource_dichotomy,
    stats,
    tetromino_number,
)
from .reductions import InsufficientResources, build, certify


class CliError(Exception):
    pass


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    """Order-preserving map, in a process pool when ``jobs > 1``."""
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def _partition(text: str):
    try:
        return parse_partition(text)
    except PartitionError as exc:
        raise CliError(str(exc)) from None


def _peels_text(seq) -> str:
    return " ".join("{" + ",".join(f"({r},{c})" for r, c in sorted(p.cells)) + "}" for p in seq.peels) or "-"


# --- subcommands -------------------------------------------------------------


def cmd_partition(args) -> int:
    lam = _partition(args.partition)
    st = stats(lam)
    s, seq = tetromino_number(lam)
    print(f"partition={format_partition(lam)}")
    print(f"size={sum(lam)}")
    print(f"b={st.b}")
    print(f"d={st.d}")
    print(f"z={st.z}")
    print(f"w={st.w}")
    print(f"s={s}")
    print(f"staircase={format_partition(st.staircase) or '()'}")
    print(f"domino_certificate={_peels_text(st.peel_certificate)}")
    print(f"tetromino_certificate={_peels_text(seq)}")
    return 0


def cmd_char(args) -> int:
    if args.first == "table":
        try:
            n = int(args.second)
        except ValueError:
            raise CliError(f"expected an integer after 'table', got {args.second!r}") from None
        if n < 1:
            raise CliError("n must be positive")
        parts, table = character_table(n)
        labels = [format_partition(p) for p in parts]
        print("\t".join(["lambda\\rho"] + labels))
        for label, row in zip(labels, table):
            print("\t".join([label] + [str(int(v)) for v in row]))
        return 0
    lam, rho = _partition(args.first), _partition(args.second)
    if sum(lam) != sum(rho):
        raise CliError(f"size mismatch: |lambda|={sum(lam)}, |rho|={sum(rho)}")
    print(character(lam, rho))
    return 0


def cmd_imm(args) -> int:
    lam = _partition(args.partition)
    g = read_graph(args.graph)
    if not isinstance(g, WeightedDigraph):
        raise CliError("imm needs a digraph file")
    if sum(lam) != g.n:
        raise CliError(f"|lambda|={sum(lam)} but the graph has {g.n} vertices")
    print(immanant(lam, g))
    return 0


def cmd_onion(args) -> int:
    lam = _partition(args.partition)
    try:
        ol = onion(lam, args.layers)
    except PartitionError as exc:
        raise CliError(str(exc)) from None
    print(f"theta={format_partition(ol.theta) or '()'}")
    print(f"format={format_partition(ol.format, compact=True)}")
    print(f"capacity={ol.accommodated_edges}")
    return 0


def cmd_reduce(args) -> int:
    lam = _partition(args.lam)
    h = read_graph(args.bigraph)
    if not isinstance(h, BipartiteGraph):
        raise CliError("reduce needs a bigraph file")
    if args.problem == "match" and args.k is None:
        raise CliError("reduce match needs --k")
    k = args.k if args.problem == "match" else None
    try:
        out = build(h, lam, k, args.route)
    except InsufficientResources as exc:
        raise CliError("insufficient resources: " + "; ".join(exc.failures)) from None
    write_reduction(out, h, args.out)
    print(f"route={out.route}")
    print(f"vertices={out.graph.n}")
    print(f"arcs={out.graph.num_arcs}")
    print(f"c={out.c}")
    print(f"wrote {Path(args.out)}")
    return 0


def cmd_verify(args) -> int:
    g, meta, h = read_reduction(args.dir)
    out = build(h, meta["lambda"], meta["k"] if meta["problem"] == "match" else None, meta["route"])
    problems = []
    if format_digraph(out.graph) != format_digraph(g):
        problems.append("stored graph differs from the rebuilt reduction")
    if out.c != meta["c"]:
        problems.append(f"stored c={meta['c']} differs from rebuilt c={out.c}")
    if (out.target, out.x_deg, out.y_deg) != (meta["target"], meta["x_deg"], meta["y_deg"]):
        problems.append("stored target differs from the rebuilt reduction")
    cert = certify(out, h, interpolate=not args.no_interpolate, exhaustive=not args.consistent_only, jobs=args.jobs)
    for p in problems:
        print(f"problem: {p}")
    for line in cert.lines():
        print(line)
    return 0 if cert.passed and not problems else 1


def cmd_gadget(args) -> int:
    if args.action == "search":
        try:
            alphabet = [Fraction(t) for t in args.alphabet.split(",") if t.strip()]
        except ValueError:
            raise CliError(f"malformed alphabet {args.alphabet!r}") from None
        try:
            g = search_gadget(alphabet)
        except GadgetNotFound as exc:
            raise CliError(str(exc)) from None
        text = format_gadget(g)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            print(f"wrote {args.out}")
        else:
            sys.stdout.write(text)
        return 0
    try:
        g = load_gadget(args.fixture)
    except (OSError, GadgetError, ValueError) as exc:
        raise CliError(str(exc)) from None
    report = verify_gadget(g)
    print(report)
    return 0 if report.passed else 1


def _scan_dichotomy(lam) -> str | None:
    try:
        resource_dichotomy(lam)
    except DichotomyViolation as exc:
        return str(exc)
    return None


def _scan_parity(lam) -> str | None:
    st = stats(lam)
    result = domino_tiling_parity(SkewShape(lam, st.staircase))
    if st.d and result.parity is None:
        return f"{format_partition(lam)}: no domino tiling"
    if result.parity is not None and result.parity != result.white_parity:
        return f"{format_partition(lam)}: parity {result.parity} != white parity {result.white_parity}"
    return None


def _scan_theta(lam) -> str | None:
    s = tetromino_number(lam)[0]
    for t in range(s + 1):
        product = theta_product(lam, t)
        value = character_on_product(lam, product)
        if value == 0:
            return f"{format_partition(lam)}: chi(theta_{t}) = 0"
        brute = sum(character(lam, rho) for rho in product.concatenations())
        if brute != value:
            return f"{format_partition(lam)}: theta_{t} product rule {value} != direct sum {brute}"
    return None


SCANS = {"dichotomy": _scan_dichotomy, "parity": _scan_parity, "theta": _scan_theta}


def cmd_scan(args) -> int:
    check = SCANS[args.what]
    failures = 0
    for n in range(0, args.max_boxes + 1):
        parts = partitions_of(n) if n else [()]
        results = _pmap(check, parts, args.jobs)
        bad = [r for r in results if r is not None]
        failures += len(bad)
        for r in bad:
            print(f"FAIL {r}")
        print(f"n={n} partitions={len(parts)} failures={len(bad)}")
    print("PASS" if failures == 0 else f"FAIL ({failures})")
    return 0 if failures == 0 else 1


# --- parser ------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="immanants", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for scans and interpolation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition resources")
    p.add_argument("action", choices=["stats"])
    p.add_argument("partition")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("char", help="character value, or 'char table N'")
    p.add_argument("first", help="lambda, or the word 'table'")
    p.add_argument("second", help="rho, or n for a table")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("imm", help="immanant of a digraph file")
    p.add_argument("partition")
    p.add_argument("graph")
    p.set_defaults(func=cmd_imm)

    p = sub.add_parser("onion", help="onion format of a partition")
    p.add_argument("partition")
    p.add_argument("layers", type=int)
    p.set_defaults(func=cmd_onion)

    p = sub.add_parser("reduce", help="build an immanant instance from a bigraph")
    p.add_argument("problem", choices=["pm", "match"])
    p.add_argument("bigraph")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--route", choices=["auto", "staircase", "tetromino"], default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="certify a reduction directory")
    p.add_argument("dir")
    p.add_argument("--no-interpolate", action="store_true")
    p.add_argument("--consistent-only", action="store_true",
                   help="enumerate only gadget-consistent covers (tetromino route)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget", help="search for or verify the edge gadget")
    p.add_argument("action", choices=["search", "verify"])
    p.add_argument("fixture", nargs="?", help="gadget file to verify (default: shipped fixture)")
    p.add_argument("--alphabet", default="1,-1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("scan", help="exhaustive property scans")
    p.add_argument("what", choices=sorted(SCANS))
    p.add_argument("--max-boxes", type=int, required=True)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        return args.func(args)
    except (CliError, GraphError, PartitionError, GadgetError, InsufficientResources, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
