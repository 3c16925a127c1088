"""Symmetric-group characters: the S4 table, single values and partition products."""

from immanants.characters import character, character_on_product, character_table, theta_product
from immanants.partitions import format_partition


def main() -> None:
    parts, table = character_table(4)
    labels = [format_partition(p) for p in parts]
    print("S4 character table (rows lambda, columns rho):")
    print("\t" + "\t".join(labels))
    for label, row in zip(labels, table):
        print(label + "\t" + "\t".join(str(int(v)) for v in row))

    print()
    print("chi_(3,2,1)(5,1) =", character((3, 2, 1), (5, 1)))
    print("chi_(5,4,3,2,1)(2^6,1^3) =", character((5, 4, 3, 2, 1), (2,) * 6 + (1,) * 3), "(staircase, even part)")

    lam = (4, 4, 4, 4)
    product = theta_product(lam, 2)
    print()
    formats = list(product.concatenations())
    print(f"theta_2 for lambda={format_partition(lam)} has {len(formats)} concatenations")
    print("  extended rule:", character_on_product(lam, product))
    print("  direct sum:   ", sum(character(lam, rho) for rho in formats))


if __name__ == "__main__":
    main()
