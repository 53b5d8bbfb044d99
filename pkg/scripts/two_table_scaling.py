"""Comparisons made by the 2-table matcher versus (m1 + m2) log2(m1 + 1)."""

import argparse
import math
import random

from maxpi.enumeration import TableInstance, two_table_solve


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'m':>6} {'comparisons':>12} {'ratio':>7}")
    for m in (1, 2, 4, 16, 64, 256, 1024, 4096):
        col = lambda: [rng.randint(0, 1) for _ in range(args.k)]
        inst = TableInstance.build([col() for _ in range(m)], [col() for _ in range(m)], [1] * args.k)
        stats = {}
        two_table_solve(inst, stats)
        ratio = stats["comparisons"] / (2 * m * math.log2(m + 1))
        print(f"{m:>6} {stats['comparisons']:>12} {ratio:>7.3f}")


if __name__ == "__main__":
    main()
