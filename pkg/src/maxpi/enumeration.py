"""Connected-set enumeration and the 2-table meet-in-the-middle matcher."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Optional, Sequence

from .graph import Graph, iter_members, members, neighborhood, popcount


def enumerate_connected_sets(
    G: Graph, v: int, b: int, f: Optional[int], within: Optional[int] = None
) -> list[int]:
    """Connected ``B`` with ``v in B``, ``|B| = b + 1`` and ``|N(B)| = f``.

    ``f=None`` drops the neighbourhood condition.

    Include/exclude branching on the smallest undecided neighbour of ``B``:
    every excluded vertex is a permanent member of ``N(B)``, so a branch dies
    once it has more than ``f`` exclusions or more than ``b + 1`` members.
    """
    scope = G.vertices if within is None else G.check(within)
    if not scope >> v & 1:
        raise ValueError(f"vertex {v} not in graph")
    if b < 0 or (f is not None and f < 0):
        return []
    limit = popcount(scope) if f is None else f
    adj = G.adj
    out: list[int] = []

    def grow(B: int, size: int, nb: int, X: int, excluded: int) -> None:
        undecided = nb & ~X
        if size == b + 1:
            if f is None or excluded + popcount(undecided) == f:
                out.append(B)
            return
        if not undecided:
            return
        u = undecided & -undecided
        w = u.bit_length() - 1
        grow(B | u, size + 1, (nb | adj[w]) & scope & ~B & ~u, X, excluded)
        if excluded < limit:
            grow(B, size, nb, X | u, excluded + 1)

    grow(1 << v, 1, adj[v] & scope, 0, 0)
    out.sort(key=members)
    return out


def enumerate_connected_supersets(
    G: Graph, P: int, size: int, nbr_size: Optional[int], within: Optional[int] = None
) -> list[int]:
    """Sets ``B ⊇ P`` with ``|B| = size``, ``|N(B)| = nbr_size`` and every
    component of ``G[B]`` meeting ``P``.

    A new vertex adjacent to all of ``P`` turns such ``B`` into connected sets
    through that vertex; those not containing ``P`` are dropped.
    """
    if not P:
        raise ValueError("P must be non-empty")
    if size < popcount(P):
        raise ValueError("size must be at least |P|")
    scope = G.vertices if within is None else G.check(within)
    if P & ~scope:
        raise ValueError("P must lie inside the graph")
    ext = G.with_apex(P)
    apex = 1 << G.n
    out = []
    for B in enumerate_connected_sets(ext, G.n, size, nbr_size, scope | apex):
        if B & P != P:
            continue
        B &= ~apex
        if nbr_size is None or popcount(neighborhood(G, B) & scope) == nbr_size:
            out.append(B)
    return out


@dataclass(frozen=True)
class TableInstance:
    k: int
    cols1: tuple[tuple[int, ...], ...]
    cols2: tuple[tuple[int, ...], ...]
    target: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.target) != self.k:
            raise ValueError("target length differs from k")
        for col in self.cols1 + self.cols2:
            if len(col) != self.k:
                raise ValueError("column length differs from k")
            if any(x not in (0, 1) for x in col):
                raise ValueError("columns must be 0/1 vectors")
        if any(x not in (0, 1, 2) for x in self.target):
            raise ValueError("target entries must be in {0, 1, 2}")

    @classmethod
    def build(
        cls,
        cols1: Sequence[Sequence[int]],
        cols2: Sequence[Sequence[int]],
        target: Sequence[int],
    ) -> "TableInstance":
        return cls(len(target), tuple(map(tuple, cols1)), tuple(map(tuple, cols2)), tuple(target))


def two_table_solve(inst: TableInstance, stats: Optional[dict] = None) -> Optional[tuple[int, int]]:
    """Smallest ``(i, j)`` with ``cols1[i] + cols2[j] == target``, or ``None``.

    ``cols1`` is sorted once; each ``target - cols2[j]`` is then located by
    binary search.  Vector comparisons are tallied in ``stats["comparisons"]``.
    """
    cols1 = inst.cols1
    count = 0

    def cmp(i: int, j: int) -> int:
        nonlocal count
        count += 1
        a, b = cols1[i], cols1[j]
        if a != b:
            return -1 if a < b else 1
        return (i > j) - (i < j)

    order = sorted(range(len(cols1)), key=cmp_to_key(cmp))
    best: Optional[tuple[int, int]] = None
    for j, col in enumerate(inst.cols2):
        need = tuple(t - x for t, x in zip(inst.target, col))
        lo, hi = 0, len(order)
        while lo < hi:
            mid = (lo + hi) // 2
            count += 1
            if cols1[order[mid]] < need:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(order):
            count += 1
            if cols1[order[lo]] == need:
                cand = (order[lo], j)
                if best is None or cand < best:
                    best = cand
    if stats is not None:
        stats["comparisons"] = stats.get("comparisons", 0) + count
    return best


def closed_indicator(G: Graph, X: int, ground: Sequence[int], within: Optional[int] = None) -> tuple[int, ...]:
    """0/1 vector over ``ground`` marking ``N[X]`` (neighbourhood inside ``within``)."""
    closed = X
    for v in iter_members(X):
        closed |= G.adj[v]
    if within is not None:
        closed &= within
    return tuple(closed >> u & 1 for u in ground)

