"""Partition resources: 2-core, dominos, tetrominos, onions and the dichotomy."""

from immanants.partitions import format_partition, onion, resource_dichotomy, stats, tetromino_number


def main() -> None:
    lam = (14, 13, 12, 9, 8, 5, 4, 3, 2, 1)
    st = stats(lam)
    s, _ = tetromino_number(lam)
    print(f"lambda = {format_partition(lam, compact=True)} ({sum(lam)} boxes)")
    print(f"  dominos d={st.d}, staircase width w={st.w}, 2-core size z={st.z}, b={st.b}, tetrominos s={s}")
    for layers in (1, 2):
        ol = onion(lam, layers)
        print(f"  {layers}-layer onion: format {format_partition(ol.format, compact=True)}, "
              f"holds {ol.accommodated_edges} matching edges")

    print()
    for lam in [(4, 4, 4, 4), (6, 5, 4, 3, 2, 1), (9, 1, 1, 1)]:
        dich = resource_dichotomy(lam)
        side = "tetromino" if dich.tetromino_bound else "staircase"
        print(f"{format_partition(lam, compact=True):>14}: s={dich.s} w={dich.w} b={dich.b} -> {side} bound holds")


if __name__ == "__main__":
    main()
