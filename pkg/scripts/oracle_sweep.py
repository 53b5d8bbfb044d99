"""Compare a solver mode against exhaustive search on generated graphs.

    python scripts/oracle_sweep.py --class interval --mode structured --count 200 --n-max 11
"""

import argparse
import time

from maxpi.classes import class_by_name
from maxpi.graph import popcount
from maxpi.oracle import InstanceSpec, brute_force_max_induced, generate
from maxpi.solver import MODES, ConstantSchedule, solve


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--class", dest="cls", default="chordal")
    ap.add_argument("--mode", default="auto", choices=MODES)
    ap.add_argument("--kind", default="gnp", choices=["gnp", "chordal", "interval", "planted-separator"])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pi = class_by_name(args.cls)
    params = {"n_min": args.n_min, "n_max": args.n_max, "p": [0.2, 0.5, 0.8], "count": args.count}
    spec = InstanceSpec(args.kind, args.seed, params)
    agree = 0
    solve_ms = oracle_ms = 0.0
    for G in generate(spec):
        t0 = time.perf_counter()
        got = solve(G, pi, ConstantSchedule(), args.mode).size
        t1 = time.perf_counter()
        want = popcount(brute_force_max_induced(G, pi))
        t2 = time.perf_counter()
        solve_ms += (t1 - t0) * 1000
        oracle_ms += (t2 - t1) * 1000
        if got == want:
            agree += 1
        else:
            print(f"mismatch n={G.n} edges={G.edges()} solver={got} oracle={want}")
    print(f"{args.cls} {args.mode} on {args.kind}: {agree}/{args.count} agree; solver {solve_ms:.0f} ms, oracle {oracle_ms:.0f} ms")


if __name__ == "__main__":
    main()
