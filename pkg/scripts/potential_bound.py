"""Tabulate the degree-reduction branching against its potential budget.

For random graphs of growing size, prints the number of leaves, the potential
sum divided by 2^(sigma n) (must stay <= 1), and the candidate count against
2 * 2^(rho n).
"""

import argparse
import random

from maxpi.branching import SigmaConstants, degree_reduction_branch, enumerate_small_side_candidates
from maxpi.oracle import gnp


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--C", type=int, default=1)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sig = SigmaConstants.default()
    rng = random.Random(args.seed)
    print(f"sigma={sig.sigma:.6f} rho={sig.rho:.6f} C={args.C} p={args.p}")
    print(f"{'n':>3} {'leaves':>8} {'phi/bound':>10} {'cands':>8} {'cands/bound':>12}")
    for n in range(1, args.n_max + 1):
        leaves = worst_phi = worst_c = 0.0
        cands = 0
        for _ in range(args.trials):
            R = gnp(n, args.p, rng)
            pairs = degree_reduction_branch(R, args.C)
            leaves = max(leaves, len(pairs))
            worst_phi = max(worst_phi, sum(2 ** (sig.sigma * (p.undecided - n)) for p in pairs))
            c = len(enumerate_small_side_candidates(R, args.C))
            cands = max(cands, c)
            worst_c = max(worst_c, c / (2 * 2 ** (sig.rho * n)))
        print(f"{n:>3} {int(leaves):>8} {worst_phi:>10.4f} {cands:>8} {worst_c:>12.4f}")


if __name__ == "__main__":
    main()
