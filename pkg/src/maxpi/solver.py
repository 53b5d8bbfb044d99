"""Exact maximum induced subgraph in a chordal-type class.

The structured pipeline wraps everything in obstruction-deletion branching.
On an obstruction-free graph it takes a maximum clique; a large one is handled
by extending subsets of the rest into it (Case A), otherwise the optimum is
split along a small clique separator and the two sides are recovered by
enumeration (B.1) or by degree-reduction candidates (B.2).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, Mapping, Optional

from .branching import (
    SigmaConstants,
    enumerate_small_side_candidates,
    finite_deletion_solve,
    max_clique_extension,
)
from .classes import PiClass
from .enumeration import TableInstance, closed_indicator, enumerate_connected_supersets, two_table_solve
from .graph import (
    Graph,
    better,
    cliques_up_to,
    connected_components,
    induced_subgraph,
    is_clique,
    lowest,
    maximum_clique,
    members,
    neighborhood,
    popcount,
    subsets_of_size,
)

Trace = Optional[Callable[[dict], None]]

MODES = ("auto", "structured", "brute", "forced-B1", "forced-B2")
BRANCH_KEYS = ("step1", "step2", "step3", "step4", "step5", "caseA", "b11", "b12", "b13", "b2")

DEFAULT_GAMMA = 0.01
DEFAULT_L = 3.0
DEFAULT_ALPHA = min(1 / 50, DEFAULT_GAMMA / (104 * (DEFAULT_L / DEFAULT_GAMMA) ** 3)) / 2


class ConstantsError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid constants: " + "; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class ConstantSchedule:
    """Constants of the structured algorithm.

    ``deletion_eps`` is the fraction of undecided vertices below which the
    obstruction-deletion wrapper switches to brute force.
    """

    alpha: float = DEFAULT_ALPHA
    beta: float = 0.06
    gamma: float = DEFAULT_GAMMA
    delta: float = 0.001
    epsilon: float = 0.005
    L: float = DEFAULT_L
    deletion_eps: float = 0.5

    @property
    def C(self) -> float:
        return self.L / self.gamma

    @property
    def ell(self) -> int:
        return math.ceil(3 * self.C**2 + 1 - 1e-9)

    @property
    def zeta(self) -> float:
        return 2 * self.alpha + 2 * self.beta + 2 * self.delta + self.epsilon

    @property
    def sigma(self) -> SigmaConstants:
        return SigmaConstants.default()

    @classmethod
    def scaled(cls, gamma: float = 0.5, L: float = 2.5, **overrides: float) -> "ConstantSchedule":
        """Valid schedule with a small component threshold ``C = L/gamma``, for desk-size tests."""
        C = L / gamma
        overrides.setdefault("alpha", gamma / (104 * C**3) / 2)
        return cls(gamma=gamma, L=L, **overrides)

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "ConstantSchedule":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown constants: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in values.items()})

    @classmethod
    def from_file(cls, path: str | Path) -> "ConstantSchedule":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        values = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"line {lineno}: expected key=value")
            values[key.strip()] = value.strip()
        return cls.from_mapping(values)


def validate_constants(c: ConstantSchedule, n: int = 0) -> list[str]:
    """Names of the violated inequalities; empty when the schedule is usable."""
    out = []
    for name in ("alpha", "beta", "gamma", "delta", "epsilon"):
        if not 0 < getattr(c, name) < 1:
            out.append(f"0 < {name} < 1")
    if not c.alpha < 1 / 48:
        out.append("α < 1/48")
    if not 0 < c.beta < 1 / 16:
        out.append("0 < β < 1/16")
    if not c.L > 2:
        out.append("L > 2")
    if c.gamma > 0:
        if not c.alpha < c.gamma / (104 * c.C**3):
            out.append("α < γ/(104C³)")
        if c.ell < 3 * c.C**2 + 1 - 1e-9:
            out.append("ℓ = 3C²+1")
    if not c.delta < c.epsilon:
        out.append("δ < ε")
    if not c.zeta < 1:
        out.append("ζ < 1")
    if not 0 < c.deletion_eps < 1:
        out.append("0 < deletion_eps < 1")
    return out


def new_stats() -> dict:
    return {
        "branches": {k: 0 for k in BRANCH_KEYS},
        "candidates_enumerated": 0,
        "two_table_columns": 0,
        "oracle_calls": 0,
        "elapsed_ms": 0.0,
    }


@dataclass(frozen=True)
class Solution:
    vertices: int
    stats: dict = field(default_factory=new_stats, compare=False)

    @property
    def size(self) -> int:
        return popcount(self.vertices)

    @property
    def members(self) -> list[int]:
        return members(self.vertices)


@dataclass(frozen=True)
class BandResult:
    terminal: bool
    vertices: Optional[int]


def _member(pi: PiClass, G: Graph, W: int, stats: dict) -> bool:
    stats["oracle_calls"] += 1
    return pi.contains(G, W)


def _bump(stats: dict, key: str, k: int = 1) -> None:
    stats["branches"][key] += k


def _require_clique(G: Graph, S: int) -> None:
    if not is_clique(G, S):
        raise ValueError(f"{members(S)} is not a clique")


def brute_force_inner(G: Graph, pi: PiClass, stats: Optional[dict] = None) -> int:
    """Largest member set by descending size; the first hit is lexicographically smallest."""
    stats = stats if stats is not None else new_stats()
    for k in range(G.n, -1, -1):
        for W in subsets_of_size(G.vertices, k):
            if _member(pi, G, W, stats):
                return W
    return 0


def solve_case_a(
    G: Graph, pi: PiClass, K: int, stats: Optional[dict] = None, trace: Trace = None
) -> Solution:
    """Best extension into ``K`` over every member set ``P`` outside ``K``."""
    _require_clique(G, K)
    stats = stats if stats is not None else new_stats()
    rest = G.vertices & ~K
    best: Optional[int] = None
    k_size = popcount(K)
    for k in range(popcount(rest), -1, -1):
        if best is not None and k + k_size < popcount(best):
            break
        for P in subsets_of_size(rest, k):
            if not _member(pi, G, P, stats):
                continue
            _bump(stats, "caseA")
            W = max_clique_extension(G, P, K, pi, trace=trace)
            if better(W, best):
                best = W
    return Solution(best or 0, stats)


def _first_member_of_size(G: Graph, pi: PiClass, k: int, stats: dict) -> Optional[int]:
    for W in subsets_of_size(G.vertices, k):
        if _member(pi, G, W, stats):
            return W
    return None


def band_limits(n: int, beta: float) -> tuple[int, int]:
    return max(0, math.floor(n / 2 - beta * n)), math.ceil(n / 2 + beta * n)


def solve_step2_band(G: Graph, pi: PiClass, beta: float, stats: Optional[dict] = None) -> BandResult:
    """Settle the instance outright when the optimum is far from ``n/2``.

    Terminal when a member set of size at least ``n/2 + beta n`` exists (the
    largest one is returned) or when none of size exactly ``n/2 - beta n``
    does; otherwise the returned set has that lower size and the optimum lies
    strictly inside the band.
    """
    if not 0 < beta < 1 / 16:
        raise ValueError("beta must lie in (0, 1/16)")
    stats = stats if stats is not None else new_stats()
    _bump(stats, "step2")
    lo, hi = band_limits(G.n, beta)
    for k in range(G.n, hi - 1, -1):
        W = _first_member_of_size(G, pi, k, stats)
        if W is not None:
            return BandResult(True, W)
    at_lo = _first_member_of_size(G, pi, lo, stats)
    if at_lo is None:
        for k in range(lo - 1, -1, -1):
            W = _first_member_of_size(G, pi, k, stats)
            if W is not None:
                return BandResult(True, W)
    return BandResult(at_lo is None, at_lo)


class _SideCache:
    """Sets ``X ⊆ scope`` of a fixed size, grouped by ``|N(X) ∩ scope|``.

    Each comes from a guess holding the smallest vertex of every component,
    grown by connected-superset enumeration, so every set is produced once.
    """

    def __init__(self, G: Graph):
        self.G = G
        self.store: dict[tuple[int, int, int], dict[int, list[int]]] = {}

    def get(self, scope: int, x: int, cap: int) -> dict[int, list[int]]:
        key = (scope, x, cap)
        if key in self.store:
            return self.store[key]
        G = self.G
        out: dict[int, list[int]] = {}
        if x == 0:
            out[0] = [0]
        for p in range(1, min(x, cap) + 1):
            for P in subsets_of_size(scope, p):
                if neighborhood(G, P) & P:
                    continue
                # every member sits in a component whose smallest vertex is in P
                upper = scope & ~((P & -P) - 1)
                for X in enumerate_connected_supersets(G, P, x, None, upper):
                    comps = connected_components(G, X)
                    if len(comps) != p or any(not P >> lowest(c) & 1 for c in comps):
                        continue
                    out.setdefault(popcount(neighborhood(G, X) & scope), []).append(X)
        for lst in out.values():
            lst.sort(key=members)
        self.store[key] = out
        return out


def solve_branch_b1(
    G: Graph,
    pi: PiClass,
    S: int,
    c: ConstantSchedule,
    sizes: tuple[int, int],
    stats: Optional[dict] = None,
    forced: bool = False,
    cache: Optional[_SideCache] = None,
    trace: Trace = None,
) -> Optional[Solution]:
    """Best ``S ∪ X1 ∪ X2`` with ``|X1|, |X2| = sizes`` and no edges between the sides.

    Loops over the neighbourhood sizes ``a1 = |N'(X1)|``, ``a2 = |N'(X2)|`` and
    their overlap ``t`` (``N'`` is the neighbourhood in ``G - S``); each triple
    is handled by exactly one of three cases.  ``forced`` lifts the size caps
    that only serve the running time.
    """
    _require_clique(G, S)
    stats = stats if stats is not None else new_stats()
    cache = cache if cache is not None else _SideCache(G)
    n = G.n
    Vp = G.vertices & ~S
    n_rest = popcount(Vp)
    x1, x2 = sizes
    if x1 < 0 or x2 < 0 or x1 + x2 > n_rest:
        return None
    cap = n_rest if forced else math.floor(c.gamma * n)
    zeta_cap = n_rest if forced else c.zeta * n
    side1 = cache.get(Vp, x1, cap)
    side2 = cache.get(Vp, x2, cap)
    best: Optional[int] = None

    def offer(W: int) -> None:
        nonlocal best
        stats["candidates_enumerated"] += 1
        if better(W, best) and _member(pi, G, W, stats):
            best = W

    def one_side_enumerated(sets: list[int], xo: int, ao: int, t: int) -> None:
        for Xe in sets:
            Ne = neighborhood(G, Xe) & Vp
            pool = Vp & ~(Xe | Ne)
            for Xo in subsets_of_size(pool, xo):
                No = neighborhood(G, Xo) & Vp
                if popcount(No) == ao and popcount(No & Ne) == t:
                    offer(S | Xe | Xo)

    def both_enumerated(a1: int, a2: int, t: int) -> None:
        for X1 in side1.get(a1, []):
            N1 = neighborhood(G, X1) & Vp
            pool = Vp & ~(X1 | N1)
            for X2 in cache.get(pool, x2, cap).get(a2 - t, []):
                N2 = neighborhood(G, X2) & Vp
                if popcount(N2) == a2 and popcount(N1 & N2) == t:
                    offer(S | X1 | X2)

    def table(ground: int, x: int, a: int, U_both: int, U_none: int) -> list[int]:
        rows = []
        for X in subsets_of_size(ground, x):
            N = neighborhood(G, X) & Vp
            if popcount(N) != a or N & U_none or U_both & ~N:
                continue
            if pi.separator_test(G, S, X | S):
                rows.append(X)
        return rows

    def two_table(a1: int, a2: int, t: int) -> None:
        u = n_rest - x1 - x2 - a1 - a2 + t
        if u < 0 or u > zeta_cap:
            return
        for U_both in subsets_of_size(Vp, t):
            for U_none in subsets_of_size(Vp & ~U_both, u):
                I = Vp & ~(U_both | U_none)
                ground = members(I)
                rows1 = table(I, x1, a1, U_both, U_none)
                rows2 = table(I, x2, a2, U_both, U_none)
                stats["two_table_columns"] += len(rows1) + len(rows2)
                if not rows1 or not rows2:
                    continue
                inst = TableInstance.build(
                    [closed_indicator(G, X, ground, Vp) for X in rows1],
                    [closed_indicator(G, X, ground, Vp) for X in rows2],
                    [1] * len(ground),
                )
                hit = two_table_solve(inst)
                if hit is not None:
                    offer(S | rows1[hit[0]] | rows2[hit[1]])

    for a1 in range(n_rest - x1 + 1):
        if a1 not in side1:
            continue
        for a2 in range(n_rest - x2 + 1):
            if a2 not in side2:
                continue
            for t in range(min(a1, a2) + 1):
                if a1 + a2 - t > n_rest - x1 - x2:
                    continue
                if abs(a1 - x1) >= c.delta * n:
                    _bump(stats, "b11")
                    one_side_enumerated(side1[a1], x2, a2, t)
                elif abs(a2 - x2) >= c.delta * n:
                    _bump(stats, "b11")
                    one_side_enumerated(side2[a2], x1, a1, t)
                elif t >= c.epsilon * n:
                    _bump(stats, "b12")
                    both_enumerated(a1, a2, t)
                else:
                    _bump(stats, "b13")
                    two_table(a1, a2, t)
    if best is None:
        return None
    if trace is not None:
        trace({"event": "b1-hit", "S": members(S), "sizes": list(sizes), "W": members(best)})
    return Solution(best, stats)


def solve_branch_b2(
    G: Graph,
    pi: PiClass,
    S: int,
    c: ConstantSchedule,
    total: Optional[int] = None,
    stats: Optional[dict] = None,
    trace: Trace = None,
    cache: Optional[dict] = None,
) -> Optional[Solution]:
    """Best ``S ∪ X ∪ Y`` where ``X`` holds the components larger than ``C`` and
    ``Y`` the small ones.

    ``X`` is grown from one guessed vertex per large component; ``Y`` ranges
    over the degree-reduction candidates of what is left once ``N[X]`` is
    removed.  ``total`` pins ``|S ∪ X ∪ Y|``.
    """
    _require_clique(G, S)
    stats = stats if stats is not None else new_stats()
    cache = cache if cache is not None else {}
    n = G.n
    Vp = G.vertices & ~S
    n_rest = popcount(Vp)
    C = c.C
    sigma = c.sigma
    large = math.floor(C) + 1
    r_max = math.floor(c.gamma * n / c.L + 1e-9)
    best: Optional[int] = None

    def small_side(R: int) -> list[int]:
        if R not in cache:
            H = induced_subgraph(G, R)
            cache[R] = [H.lift(Y) for Y in enumerate_small_side_candidates(H, C, sigma, trace)]
            stats["candidates_enumerated"] += len(cache[R])
        return cache[R]

    def large_sides(r: int):
        if r == 0:
            yield 0
            return
        for P in subsets_of_size(Vp, r):
            for x in range(r * large, n_rest + 1):
                for X in enumerate_connected_supersets(G, P, x, None, Vp):
                    comps = connected_components(G, X)
                    if len(comps) == r and all(popcount(q) >= large for q in comps):
                        yield X

    for r in range(r_max + 1):
        for X in large_sides(r):
            _bump(stats, "step5")
            _bump(stats, "b2")
            R = Vp & ~(X | neighborhood(G, X))
            if popcount(R) < c.gamma * n / 2:
                continue
            for Y in small_side(R):
                W = S | X | Y
                if total is not None and popcount(W) != total:
                    continue
                if better(W, best) and _member(pi, G, W, stats):
                    best = W
    return None if best is None else Solution(best, stats)


def _fold(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if b is not None and better(b, a):
        return b
    return a


def _case_b(G: Graph, pi: PiClass, c: ConstantSchedule, stats: dict, trace: Trace, forced: bool) -> int:
    n = G.n
    best: Optional[int] = None
    if forced:
        levels = range(n, -1, -1)
        separators = cliques_up_to(G, n)
    else:
        band = solve_step2_band(G, pi, c.beta, stats)
        if band.terminal:
            return band.vertices or 0
        best = band.vertices
        lo, hi = band_limits(n, c.beta)
        levels = range(hi - 1, lo, -1)
        separators = cliques_up_to(G, math.floor(c.alpha * n))
    side_cache = _SideCache(G)
    b2_cache: dict = {}
    for s in levels:
        found: Optional[int] = None
        for S in separators:
            rest = s - popcount(S)
            if rest < 0:
                continue
            _bump(stats, "step3")
            # the two sides are interchangeable, so |X1| >= |X2| suffices
            for x1 in range(rest, (rest - 1) // 2, -1):
                _bump(stats, "step4")
                hit = solve_branch_b1(G, pi, S, c, (x1, rest - x1), stats, forced, side_cache, trace)
                found = _fold(found, hit and hit.vertices)
            if not forced:
                hit = solve_branch_b2(G, pi, S, c, s, stats, trace, b2_cache)
                found = _fold(found, hit and hit.vertices)
        if found is not None:
            return found
    return best or 0


def _core(G: Graph, pi: PiClass, c: ConstantSchedule, stats: dict, trace: Trace) -> int:
    if G.n == 0:
        return 0
    _bump(stats, "step1")
    K = maximum_clique(G)
    if popcount(K) >= c.alpha * G.n:
        return solve_case_a(G, pi, K, stats, trace).vertices
    return _case_b(G, pi, c, stats, trace, forced=False)


def _b2_only(G: Graph, pi: PiClass, c: ConstantSchedule, stats: dict, trace: Trace) -> int:
    best: Optional[int] = None
    cache: dict = {}
    for S in cliques_up_to(G, math.floor(c.alpha * G.n)):
        _bump(stats, "step3")
        hit = solve_branch_b2(G, pi, S, c, None, stats, trace, cache)
        best = _fold(best, hit and hit.vertices)
    return best or 0


def solve(
    G: Graph,
    pi: PiClass,
    c: Optional[ConstantSchedule] = None,
    mode: str = "auto",
    trace: Trace = None,
) -> Solution:
    """Maximum ``W`` with ``G[W]`` in ``pi``; ties go to the lexicographically smallest.

    ``forced-B1`` runs only the separator-split branch, over every clique and
    without the size caps; ``forced-B2`` runs only the small-component branch
    inside the obstruction-deletion wrapper.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    c = c if c is not None else ConstantSchedule()
    if mode in ("auto", "structured", "forced-B2"):
        violations = validate_constants(c, G.n)
        if violations:
            raise ConstantsError(violations)
    stats = new_stats()
    start = time.perf_counter()

    if mode == "auto" and pi.contains(G):
        W = G.vertices
    elif mode in ("auto", "structured"):
        W = finite_deletion_solve(
            G, pi, c.ell, lambda H: _core(H, pi, c, stats, trace), c.deletion_eps, stats, trace
        )
    elif mode == "brute":
        W = brute_force_inner(G, pi, stats)
    elif mode == "forced-B1":
        W = _case_b(G, pi, c, stats, trace, forced=True)
    else:
        W = finite_deletion_solve(
            G, pi, c.ell, lambda H: _b2_only(H, pi, c, stats, trace), c.deletion_eps, stats, trace
        )

    if not pi.contains(G, W):
        raise AssertionError(f"solver returned a non-member set {members(W)}")
    stats["elapsed_ms"] = (time.perf_counter() - start) * 1000
    return Solution(W, stats)
