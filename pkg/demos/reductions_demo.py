"""Counting matchings of a small bipartite graph through immanants, on both routes."""

from fractions import Fraction

from immanants.digraph import BipartiteGraph
from immanants.partitions import format_partition
from immanants.reductions import build, certify


def show(title, h, lam, k=None, route="auto", **kwargs) -> None:
    out = build(h, lam, k, route)
    print(f"{title}: route={out.route}, lambda={format_partition(lam, compact=True)}, "
          f"{out.graph.n} vertices, {out.graph.num_arcs} arcs, c={out.c}")
    for line in certify(out, h, **kwargs).lines():
        print("   ", line)


def main() -> None:
    h = BipartiteGraph(2, 2)
    h.add_edge(0, 0, 2)
    h.add_edge(0, 1, 1)
    h.add_edge(1, 0, Fraction(1, 2))
    h.add_edge(1, 1, 4)
    show("perfect matchings", h, (4, 3, 2, 1), route="staircase")
    show("perfect matchings", h, (4, 4, 4, 4), route="tetromino")
    show("1-matchings", h, (6, 5, 4, 3, 2, 1, 1, 1, 1, 1), k=1, route="staircase")
    show("1-matchings", h, (4, 4, 4, 4) + (1,) * 18, k=1, route="tetromino", exhaustive=False)


if __name__ == "__main__":
    main()
