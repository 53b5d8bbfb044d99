"""Branching engines: obstruction deletion, clique extension, degree reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .classes import PiClass
from .graph import (
    Graph,
    all_subsets,
    better,
    delete_vertices,
    is_clique,
    iter_members,
    members,
    popcount,
    subsets_of_size,
)

Trace = Optional[Callable[[dict], None]]
InnerSolver = Callable[[Graph], int]

SUBSET_BASE = 1.89


def subsets_up_to_third(n: int) -> int:
    """Number of subsets of an ``n``-set with at most ``n/3`` elements."""
    return sum(math.comb(n, k) for k in range(n // 3 + 1))


def third_fact_holds(n: int) -> bool:
    """``subsets_up_to_third(n) <= 1.89**n``, decided in exact integer arithmetic."""
    return subsets_up_to_third(n) * 100**n <= 189**n


def _sigma_from_prime(base: float) -> float:
    # smallest s with 2^s (2^s - 1) >= base: 2^s is the positive root of x^2 - x - base
    s = math.log2((1 + math.sqrt(1 + 4 * base)) / 2)
    while 2**s * (2**s - 1) < base:
        s = math.nextafter(s, 2.0)
    return s


@dataclass(frozen=True)
class SigmaConstants:
    sigma_prime: float
    sigma: float
    rho: float

    def __post_init__(self) -> None:
        if not self.sigma_prime < self.sigma < 1:
            raise ValueError("need sigma' < sigma < 1")
        if 2**self.sigma * (2**self.sigma - 1) < 2**self.sigma_prime * (1 - 1e-15):
            raise ValueError("need 2^sigma (2^sigma - 1) >= 2^sigma'")

    @classmethod
    def default(cls) -> "SigmaConstants":
        sigma = _sigma_from_prime(SUBSET_BASE)
        return cls(math.log2(SUBSET_BASE), sigma, (3 + sigma) / 4)


@dataclass(frozen=True)
class BranchPair:
    """Vertices assumed in (``A``) and out (``D``) of a host with ``size`` vertices."""

    A: int
    D: int
    size: int

    def __post_init__(self) -> None:
        if self.A & self.D:
            raise ValueError("A and D must be disjoint")

    @property
    def undecided(self) -> int:
        return self.size - popcount(self.A | self.D)

    def potential(self, sigma: float) -> float:
        return 2.0 ** (sigma * self.undecided)


def _emit(trace: Trace, **event) -> None:
    if trace is not None:
        trace(event)


def finite_deletion_solve(
    G: Graph,
    pi: PiClass,
    ell: int,
    inner: InnerSolver,
    eps: float,
    stats: Optional[dict] = None,
    trace: Trace = None,
) -> int:
    """Largest ``W`` with ``G[W]`` in ``pi``, branching on obstructions of size <= ``ell``.

    Each branch carries disjoint ``A`` (kept) and ``D`` (deleted).  An
    obstruction in ``G - D`` forces some vertex of it outside the solution, so
    its undecided part is split every way with a non-empty deleted share.  With
    no obstruction left, ``inner`` solves ``G - D`` outright (dropping the
    requirement ``A ⊆ W`` can only enlarge the answer).  Once more than
    ``(1 - eps) n`` vertices are decided, the rest is brute-forced.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    n = G.n
    V = G.vertices
    stats = stats if stats is not None else {}

    def brute(A: int, D: int) -> Optional[int]:
        if not pi.contains(G, A):
            return None
        rest = V & ~(A | D)
        for k in range(popcount(rest), -1, -1):
            for extra in subsets_of_size(rest, k):
                if pi.contains(G, A | extra):
                    return A | extra
        return None

    def branch(A: int, D: int) -> Optional[int]:
        stats["deletion_branches"] = stats.get("deletion_branches", 0) + 1
        if popcount(A | D) > (1 - eps) * n:
            stats["deletion_brute"] = stats.get("deletion_brute", 0) + 1
            _emit(trace, event="deletion-brute", A=members(A), D=members(D))
            return brute(A, D)
        S = pi.find_forbidden(G, ell, V & ~D)
        if S is None:
            stats["inner_calls"] = stats.get("inner_calls", 0) + 1
            _emit(trace, event="deletion-inner", D=members(D))
            sub = delete_vertices(G, D)
            return sub.lift(inner(sub))
        open_part = S & ~A
        _emit(trace, event="deletion-branch", obstruction=members(S), A=members(A), D=members(D))
        best = None
        for keep in all_subsets(open_part):
            if keep == open_part:
                continue
            found = branch(A | keep, D | (open_part & ~keep))
            if found is not None and better(found, best):
                best = found
        return best

    result = branch(0, 0)
    return 0 if result is None else result


def red_subsets(G: Graph, P: int, K: int, pi: PiClass) -> set[int]:
    """Non-empty ``W ⊆ K`` with ``|W| <= aleph`` and ``G[P ∪ W]`` in ``pi``."""
    red = set()
    for k in range(1, min(pi.aleph, popcount(K)) + 1):
        for W in subsets_of_size(K, k):
            if pi.contains(G, P | W):
                red.add(W)
    return red


def max_clique_extension(
    G: Graph, P: int, K: int, pi: PiClass, stats: Optional[dict] = None, trace: Trace = None
) -> int:
    """``P ∪ X`` for a largest ``X ⊆ K`` with ``G[P ∪ X]`` in ``pi``.

    Membership of ``P ∪ X`` is decided by the small subsets of ``X`` alone
    (an obstruction meets the clique ``K`` in at most ``aleph`` vertices), so
    this is a maximum clique in the hypergraph of "red" small subsets, found by
    branching on a non-red subset that is still fully alive.
    """
    if P & K:
        raise ValueError("P and K must be disjoint")
    if not is_clique(G, K):
        raise ValueError("K must be a clique")
    if not pi.contains(G, P):
        raise ValueError("G[P] must belong to the class")
    red = red_subsets(G, P, K, pi)
    non_red = [
        W
        for k in range(1, min(pi.aleph, popcount(K)) + 1)
        for W in subsets_of_size(K, k)
        if W not in red
    ]
    best: Optional[int] = None

    def branch(A: int, D: int) -> None:
        nonlocal best
        if stats is not None:
            stats["extension_branches"] = stats.get("extension_branches", 0) + 1
        W = next((W for W in non_red if not W & D), None)
        if W is None:
            alive = K & ~D
            if better(alive, best):
                best = alive
            return
        open_part = W & ~A
        if not open_part:
            return
        for keep in all_subsets(open_part):
            if keep != open_part:
                branch(A | keep, D | (open_part & ~keep))

    branch(0, 0)
    _emit(trace, event="clique-extension", P=members(P), X=members(best or 0))
    return P | (best or 0)


def degree_reduction_branch(
    R: Graph, C: float, sigma: Optional[SigmaConstants] = None, trace: Trace = None
) -> list[BranchPair]:
    """Branch until every vertex outside ``D`` has fewer than ``3C`` neighbours outside ``D``.

    A heavy ``v`` (smallest id first) either leaves (``v -> D``, skipped when
    ``v`` is already in ``A``) or stays together with at most a third of its
    undecided neighbours, keeping fewer than ``C`` kept neighbours overall; the
    remaining undecided neighbours leave.  Any set whose components have at
    most ``C`` vertices is consistent with some output pair.
    """
    if C < 1:
        raise ValueError("C must be at least 1")
    V = R.vertices
    out: list[BranchPair] = []

    def branch(A: int, D: int) -> None:
        alive = V & ~D
        heavy = next((v for v in iter_members(alive) if popcount(R.adj[v] & alive) >= 3 * C), None)
        if heavy is None:
            out.append(BranchPair(A, D, R.n))
            return
        v = heavy
        bit = 1 << v
        undecided = R.adj[v] & alive & ~A
        m = popcount(undecided)
        kept = popcount(R.adj[v] & A)
        _emit(trace, event="heavy-branch", v=v, A=members(A), D=members(D), m=m)
        if not A & bit:
            branch(A, D | bit)
        for k in range(0, m // 3 + 1):
            if kept + k >= C:
                break
            for T in subsets_of_size(undecided, k):
                branch(A | bit | T, D | (undecided & ~T))

    branch(0, 0)
    out.sort(key=lambda p: (members(p.A), members(p.D)))
    return out


def split_pairs(pairs: list[BranchPair]) -> tuple[list[BranchPair], list[BranchPair]]:
    """Pairs deciding at least a quarter of the host, and the rest."""
    small = [p for p in pairs if 4 * popcount(p.A | p.D) >= p.size]
    large = [p for p in pairs if 4 * popcount(p.A | p.D) < p.size]
    return small, large


def candidates_for_pair(pair: BranchPair, host: int, brute: bool) -> list[int]:
    Q = host & ~(pair.A | pair.D)
    q = popcount(Q)
    low = 0 if brute else -(-2 * q // 3)
    return [pair.A | Y for k in range(low, q + 1) for Y in subsets_of_size(Q, k)]


def enumerate_small_side_candidates(
    R: Graph, C: float, sigma: Optional[SigmaConstants] = None, trace: Trace = None
) -> list[int]:
    """Candidate sets for the union of small components inside ``R``.

    Pairs that decided at least a quarter of ``R`` get every completion;
    the others only completions keeping at least two thirds of the undecided
    vertices.
    """
    pairs = degree_reduction_branch(R, C, sigma, trace)
    small, large = split_pairs(pairs)
    found: set[int] = set()
    for p in small:
        found.update(candidates_for_pair(p, R.vertices, brute=True))
    for p in large:
        found.update(candidates_for_pair(p, R.vertices, brute=False))
    return sorted(found, key=members)


def potential_sum(pairs: list[BranchPair], sigma: float) -> float:
    return math.fsum(p.potential(sigma) for p in pairs)


def combinations_count_bound(n: int, sigma: SigmaConstants) -> float:
    """``2 * 2^(rho n)``: the cap on the number of small-side candidates."""
    return 2 * 2.0 ** (sigma.rho * n)

