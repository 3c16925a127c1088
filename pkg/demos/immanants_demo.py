"""Immanants of a small matrix, against determinant and permanent."""

from fractions import Fraction

from immanants.digraph import WeightedDigraph, cycle_cover_sums, determinant, immanant, permanent
from immanants.partitions import format_partition, partitions_of


def main() -> None:
    matrix = [
        [1, 2, 0, Fraction(1, 2)],
        [0, 1, 3, 1],
        [1, 0, -1, 2],
        [2, 1, 1, 0],
    ]
    g = WeightedDigraph.from_matrix(matrix)
    print("cycle-cover weight by format:")
    for fmt, weight in sorted(cycle_cover_sums(g).items()):
        print(f"  {format_partition(fmt):>8}: {weight}")
    print()
    for lam in partitions_of(4):
        print(f"imm_{format_partition(lam):<8} = {immanant(lam, g)}")
    print(f"det           = {determinant(matrix)}")
    print(f"per           = {permanent(matrix)}")


if __name__ == "__main__":
    main()
