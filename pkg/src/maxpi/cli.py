"""Batch command line: read a graph, solve, print the solution and counters."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .classes import class_by_name
from .io import ParseError, parse_graph
from .oracle import brute_force_max_induced, oracle_cap
from .solver import MODES, ConstantSchedule, solve, validate_constants

EXIT_OK, EXIT_USAGE, EXIT_CONSTANTS, EXIT_PARSE, EXIT_DISAGREE = 0, 1, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxpi", description=__doc__)
    ap.add_argument("--input", required=True, help="edge-list file, or - for stdin")
    ap.add_argument("--class", dest="cls", default="chordal", help="chordal, interval, chordal+F or interval+F")
    ap.add_argument("--overlay", action="append", default=[], help="forbidden graph file for a +F class (repeatable)")
    ap.add_argument("--mode", default="auto", choices=MODES)
    ap.add_argument("--constants", help="key=value file overriding the default schedule")
    ap.add_argument("--json", action="store_true", help="print one JSON object")
    ap.add_argument("--trace", action="store_true", help="branch events as JSON lines on stderr")
    ap.add_argument("--oracle-check", action="store_true", help="compare against exhaustive search")
    ap.add_argument("--threads", type=int, default=1, help="accepted for compatibility; runs serially")
    ap.add_argument("--seed", type=int, default=0, help="recorded only; the solver is deterministic")
    return ap


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def report(mode: str, cls: str, G, solution) -> dict:
    st = solution.stats
    return {
        "mode": mode,
        "class": cls,
        "n": G.n,
        "m": G.m,
        "optimum_size": solution.size,
        "vertices": [v + 1 for v in solution.members],
        "branches": dict(st["branches"]),
        "candidates_enumerated": st["candidates_enumerated"],
        "two_table_columns": st["two_table_columns"],
        "elapsed_ms": round(st["elapsed_ms"], 3),
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        G = parse_graph(_read(args.input))
        family = [parse_graph(_read(p)) for p in args.overlay]
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        pi = class_by_name(args.cls, family)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        c = ConstantSchedule.from_file(args.constants) if args.constants else ConstantSchedule()
    except (OSError, ValueError) as exc:
        print(f"constants error: {exc}", file=sys.stderr)
        return EXIT_CONSTANTS
    if args.mode != "brute":
        violations = validate_constants(c, G.n)
        if violations:
            print("constants violate: " + "; ".join(violations), file=sys.stderr)
            return EXIT_CONSTANTS

    trace = (lambda event: print(json.dumps(event), file=sys.stderr)) if args.trace else None
    solution = solve(G, pi, c, args.mode, trace)
    out = report(args.mode, args.cls, G, solution)

    status = EXIT_OK
    if args.oracle_check:
        if G.n <= oracle_cap():
            expected = brute_force_max_induced(G, pi).bit_count()
            verdict = "agree" if expected == solution.size else "disagree"
            out["oracle"] = {"verdict": verdict, "optimum_size": expected}
            if verdict == "disagree":
                status = EXIT_DISAGREE
        else:
            out["oracle"] = {"verdict": "skipped", "optimum_size": None}

    if args.json:
        print(json.dumps(out))
    else:
        print(f"size {out['optimum_size']}")
        print("vertices " + " ".join(map(str, out["vertices"])))
        print("branches " + " ".join(f"{k}={v}" for k, v in out["branches"].items()))
        print(f"elapsed_ms {out['elapsed_ms']}")
        if "oracle" in out:
            print(f"oracle {out['oracle']['verdict']}")
    return status



