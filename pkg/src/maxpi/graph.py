"""Immutable undirected graphs over vertices ``0..n-1`` and bitmask vertex sets.

A vertex set is a plain ``int`` whose bit ``i`` is set when vertex ``i`` is a
member.  Python integers give exact, allocation-cheap set algebra (``|``,
``&``, ``& ~``) and a canonical ordering, which is all the solver needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class InvalidVertexError(ValueError):
    """A vertex id or vertex set refers to vertices outside the host graph."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(iter_members(mask))


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        if v < 0:
            raise InvalidVertexError(f"negative vertex id {v}")
        mask |= 1 << v
    return mask


def as_mask(W: int | Iterable[int]) -> int:
    if isinstance(W, int):
        return W
    return vertex_set(W)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def lex_less(a: int, b: int) -> bool:
    """Compare two sets by their sorted member lists (lexicographically)."""
    if a == b:
        return False
    diff = a ^ b
    low = diff & -diff
    above = ~((low << 1) - 1)
    # the lists agree below the smallest differing element d; whoever holds d
    # is smaller unless the other list stops there (then it is a prefix)
    if a & low:
        return bool(b & above)
    return not (a & above)


def better(a: int, b: Optional[int]) -> bool:
    """True when ``a`` beats ``b``: larger, then lexicographically smaller."""
    if b is None:
        return True
    ca, cb = popcount(a), popcount(b)
    if ca != cb:
        return ca > cb
    return lex_less(a, b)


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    """All ``k``-subsets of ``mask`` in lexicographic order of member lists."""
    from itertools import combinations

    for combo in combinations(members(mask), k):
        s = 0
        for v in combo:
            s |= 1 << v
        yield s


def all_subsets(mask: int) -> Iterator[int]:
    """Every subset of ``mask`` (including the empty set and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of ``v``.

    ``labels[i]`` is the id of vertex ``i`` in the graph this one was induced
    from (identity for graphs built directly).
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = full_mask(self.n)
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if nb & ~full:
                raise InvalidVertexError(f"vertex {v} has neighbour outside 0..{self.n - 1}")
            for u in iter_members(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        elif len(self.labels) != self.n:
            raise ValueError("labels length does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def _derived(cls, n: int, adj: tuple[int, ...], labels: tuple[int, ...]) -> "Graph":
        # built from an already validated graph; skip the symmetry scan
        G = object.__new__(cls)
        object.__setattr__(G, "n", n)
        object.__setattr__(G, "adj", adj)
        object.__setattr__(G, "labels", labels)
        return G

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def vertices(self) -> int:
        return full_mask(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: Optional[int] = None) -> int:
        nb = self.adj[v] if within is None else self.adj[v] & within
        return popcount(nb)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_members(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def check(self, W: int) -> int:
        if W < 0 or W >> self.n:
            raise InvalidVertexError(f"vertex set {members(W) if W >= 0 else W} not within 0..{self.n - 1}")
        return W

    def lift(self, W: int) -> int:
        """Map a vertex set of this graph to its parent's vertex ids."""
        out = 0
        for v in iter_members(W):
            out |= 1 << self.labels[v]
        return out

    def with_apex(self, attach: int) -> "Graph":
        """Copy of the graph plus a new vertex ``n`` adjacent to ``attach``."""
        self.check(attach)
        adj = list(self.adj)
        for u in iter_members(attach):
            adj[u] |= 1 << self.n
        adj.append(attach)
        return Graph._derived(self.n + 1, tuple(adj), self.labels + (-1,))


def induced_subgraph(G: Graph, W: int | Iterable[int]) -> Graph:
    """``G[W]`` with vertices renumbered ``0..|W|-1`` in increasing order."""
    W = G.check(as_mask(W))
    order = members(W)
    index = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        nb = 0
        for u in iter_members(G.adj[v] & W):
            nb |= 1 << index[u]
        adj.append(nb)
    return Graph._derived(len(order), tuple(adj), tuple(order))


def delete_vertices(G: Graph, D: int) -> Graph:
    return induced_subgraph(G, G.vertices & ~G.check(D))


def neighborhood(G: Graph, W: int | Iterable[int], closed: bool = False) -> int:
    W = G.check(as_mask(W))
    out = 0
    for v in iter_members(W):
        out |= G.adj[v]
    return out | W if closed else out & ~W


def component_of(G: Graph, v: int, within: int) -> int:
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        for u in iter_members(frontier):
            nxt |= G.adj[u]
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


def connected_components(G: Graph, W: Optional[int | Iterable[int]] = None) -> list[int]:
    """Maximal connected subsets of ``W``, ordered by smallest member."""
    rest = G.vertices if W is None else G.check(as_mask(W))
    comps = []
    while rest:
        comp = component_of(G, lowest(rest), rest)
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(G: Graph, W: Optional[int] = None) -> bool:
    W = G.vertices if W is None else W
    return W == 0 or component_of(G, lowest(W), W) == W


def is_clique(G: Graph, S: int | Iterable[int]) -> bool:
    S = G.check(as_mask(S))
    for v in iter_members(S):
        if (S & ~(1 << v)) & ~G.adj[v]:
            return False
    return True


def _color_bound(G: Graph, cand: int) -> int:
    """Number of colours used by greedy sequential colouring of ``G[cand]``."""
    colors = 0
    rest = cand
    while rest:
        colors += 1
        avail = rest
        while avail:
            v = lowest(avail)
            rest &= ~(1 << v)
            avail &= ~(1 << v) & ~G.adj[v]
    return colors


def maximum_clique(G: Graph, within: Optional[int] = None) -> int:
    """Maximum clique; the lexicographically smallest among maximum ones.

    Branch and bound in lexicographic DFS order with greedy-colouring upper
    bounds.  A strictly larger clique is the only thing that replaces the
    incumbent, so the first maximum clique met in DFS preorder wins, and that
    one is lexicographically smallest.
    """
    cand0 = G.vertices if within is None else G.check(within)
    best = 0
    best_size = 0

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        while cand:
            if size + _color_bound(G, cand) <= best_size:
                return
            v = lowest(cand)
            cand &= ~(1 << v)
            new = clique | (1 << v)
            if size + 1 > best_size:
                best, best_size = new, size + 1
            expand(new, size + 1, cand & G.adj[v])

    expand(0, 0, cand0)
    return best


def cliques_up_to(G: Graph, k: int, within: Optional[int] = None) -> list[int]:
    """Every clique with at most ``k`` vertices (the empty set included), sorted by members."""
    scope = G.vertices if within is None else G.check(within)
    out = []

    def grow(clique: int, size: int, cand: int) -> None:
        out.append(clique)
        if size == k:
            return
        while cand:
            v = lowest(cand)
            cand &= ~(1 << v)
            grow(clique | (1 << v), size + 1, cand & G.adj[v])

    if k >= 0:
        grow(0, 0, scope)
    out.sort(key=members)
    return out
