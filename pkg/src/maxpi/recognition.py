"""Chordal and interval graph recognition and structure.

Every predicate takes an optional ``within`` mask and then answers for the
induced subgraph ``G[within]`` without building it; the solver calls these in
tight loops over candidate vertex sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import (
    Graph,
    component_of,
    connected_components,
    is_clique,
    iter_members,
    lowest,
    members,
    popcount,
)


class NotChordalError(ValueError):
    pass


class NotACliqueError(ValueError):
    pass


def _scope(G: Graph, within: Optional[int]) -> int:
    return G.vertices if within is None else G.check(within)


def mcs_order(G: Graph, within: Optional[int] = None) -> list[int]:
    """Maximum cardinality search visit order (ties to the smallest id)."""
    rest = _scope(G, within)
    visited = 0
    order = []
    while rest:
        best_v, best_w = -1, -1
        for v in iter_members(rest):
            w = popcount(G.adj[v] & visited)
            if w > best_w:
                best_v, best_w = v, w
        order.append(best_v)
        visited |= 1 << best_v
        rest &= ~(1 << best_v)
    return order


def _peo_violation(G: Graph, order: list[int]) -> Optional[tuple[int, int, int]]:
    """First ``(v, a, b)`` where earlier neighbours ``a, b`` of ``v`` are non-adjacent."""
    seen = 0
    last_seen: dict[int, int] = {}
    for pos, v in enumerate(order):
        earlier = G.adj[v] & seen
        if earlier:
            parent = max(iter_members(earlier), key=last_seen.__getitem__)
            missing = earlier & ~(1 << parent) & ~G.adj[parent]
            if missing:
                return v, parent, lowest(missing)
        seen |= 1 << v
        last_seen[v] = pos
    return None


def is_chordal(G: Graph, within: Optional[int] = None) -> bool:
    return _peo_violation(G, mcs_order(G, within)) is None


def _bfs_path(G: Graph, src: int, dst: int, allowed: int) -> Optional[list[int]]:
    """A shortest ``src``-``dst`` path inside ``allowed`` (smallest ids first)."""
    layers = [1 << src]
    seen = 1 << src
    while not layers[-1] >> dst & 1:
        nxt = 0
        for u in iter_members(layers[-1]):
            nxt |= G.adj[u]
        nxt &= allowed & ~seen
        if not nxt:
            return None
        seen |= nxt
        layers.append(nxt)
    path = [dst]
    for layer in reversed(layers[:-1]):
        path.append(lowest(layer & G.adj[path[-1]]))
    path.reverse()
    return path


def shortest_hole(G: Graph, within: Optional[int] = None, max_len: Optional[int] = None) -> Optional[int]:
    """Vertex set of a shortest chordless cycle of length >= 4, if any.

    For each vertex ``v`` taken as the smallest vertex of the hole, and each
    pair of non-adjacent neighbours ``a < b`` above ``v``, a shortest
    ``a``-``b`` path avoiding ``N[v]`` closes a hole through ``v``.
    """
    scope = _scope(G, within)
    best: Optional[int] = None
    best_len = math.inf if max_len is None else max_len + 1
    for v in iter_members(scope):
        above = scope & ~((1 << (v + 1)) - 1)
        nbrs = G.adj[v] & above
        if popcount(nbrs) < 2:
            continue
        body = above & ~G.adj[v]
        for a in iter_members(nbrs):
            for b in iter_members(nbrs & ~G.adj[a] & ~((1 << (a + 1)) - 1)):
                path = _bfs_path(G, a, b, body | (1 << a) | (1 << b))
                if path is None or len(path) + 1 >= best_len:
                    continue
                best_len = len(path) + 1
                best = (1 << v) | sum(1 << u for u in path)
                if best_len == 4:
                    return best
    return best


def find_hole(G: Graph, within: Optional[int] = None) -> Optional[int]:
    """A chordless cycle of length >= 4, or ``None`` when ``G[within]`` is chordal.

    The witness is first sought at the vertex where the perfect elimination
    check fails, closing its two non-adjacent neighbours by a shortest path
    outside its neighbourhood; if that pair has no such path the search falls
    back to a full shortest-hole scan.
    """
    scope = _scope(G, within)
    bad = _peo_violation(G, mcs_order(G, scope))
    if bad is None:
        return None
    v, a, b = bad
    allowed = (scope & ~G.adj[v] & ~(1 << v)) | (1 << a) | (1 << b)
    path = _bfs_path(G, a, b, allowed)
    if path is not None:
        return (1 << v) | sum(1 << u for u in path)
    return shortest_hole(G, scope)


def find_forbidden_chordal(G: Graph, ell: int, within: Optional[int] = None) -> Optional[int]:
    """A minimum-length hole of length in ``[4, ell]``, or ``None``."""
    if ell < 4:
        raise ValueError("ell must be at least 4")
    if is_chordal(G, within):
        return None
    return shortest_hole(G, within, max_len=ell)


def maximal_cliques_chordal(G: Graph, within: Optional[int] = None) -> list[int]:
    """Maximal cliques of a chordal graph, sorted by member list."""
    scope = _scope(G, within)
    order = mcs_order(G, scope)
    if _peo_violation(G, order) is not None:
        raise NotChordalError("graph is not chordal")
    seen = 0
    cands = []
    for v in order:
        cands.append((G.adj[v] & seen) | (1 << v))
        seen |= 1 << v
    cands = sorted(set(cands), key=popcount, reverse=True)
    maximal: list[int] = []
    for c in cands:
        if not any(c & m == c for m in maximal):
            maximal.append(c)
    return sorted(maximal, key=members)


@dataclass(frozen=True)
class CliqueTree:
    bags: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def clique_tree(G: Graph, within: Optional[int] = None) -> CliqueTree:
    """Clique tree as a maximum-weight spanning tree of the clique graph."""
    if not is_chordal(G, within):
        raise NotChordalError("clique tree requires a chordal graph")
    bags = maximal_cliques_chordal(G, within)
    k = len(bags)
    edges = []
    if k:
        in_tree = [False] * k
        in_tree[0] = True
        best_w = [popcount(bags[0] & b) for b in bags]
        link = [0] * k
        for _ in range(k - 1):
            j = max((i for i in range(k) if not in_tree[i]), key=lambda i: (best_w[i], -i))
            in_tree[j] = True
            edges.append((min(link[j], j), max(link[j], j)))
            for i in range(k):
                w = popcount(bags[i] & bags[j])
                if not in_tree[i] and w > best_w[i]:
                    best_w[i], link[i] = w, j
    return CliqueTree(tuple(bags), tuple(edges))


@dataclass(frozen=True)
class SeparatorSplit:
    S: int
    X1: int
    X2: int


def _split_components(comps: list[int], n: int) -> Optional[tuple[int, int]]:
    if any(3 * popcount(c) > 2 * n for c in comps):
        return None
    if not comps:
        return 0, 0
    largest = min(comps, key=lambda c: (-popcount(c), lowest(c)))
    if 3 * popcount(largest) >= n:
        x1 = largest
    else:
        x1 = 0
        for c in comps:
            if 3 * popcount(x1) >= n:
                break
            x1 |= c
    x2 = 0
    for c in comps:
        if not c & x1:
            x2 |= c
    return x1, x2


def balanced_clique_separator(H: Graph) -> SeparatorSplit:
    """A clique ``S`` splitting ``V(H) - S`` into non-adjacent sides of size <= 2n/3.

    Candidates are tried in the order: empty set, minimal separators (bag
    intersections along clique-tree edges), maximal cliques.
    """
    if H.n < 1:
        raise ValueError("graph must have at least one vertex")
    tree = clique_tree(H)
    cands = [0]
    cands += [tree.bags[i] & tree.bags[j] for i, j in tree.edges]
    cands += list(tree.bags)
    for S in cands:
        split = _split_components(connected_components(H, H.vertices & ~S), H.n)
        if split is not None:
            return SeparatorSplit(S, *split)
    raise AssertionError("chordal graph without a balanced clique separator")


def has_asteroidal_triple(G: Graph, within: Optional[int] = None) -> bool:
    scope = _scope(G, within)
    verts = members(scope)
    comp_id: dict[int, dict[int, int]] = {}
    for u in verts:
        ids: dict[int, int] = {}
        rest = scope & ~G.adj[u] & ~(1 << u)
        while rest:
            c = component_of(G, lowest(rest), rest)
            for x in iter_members(c):
                ids[x] = c
            rest &= ~c
        comp_id[u] = ids
    for i, u in enumerate(verts):
        cu = comp_id[u]
        for j in range(i + 1, len(verts)):
            v = verts[j]
            if G.adj[u] >> v & 1:
                continue
            cv = comp_id[v]
            for w in verts[j + 1:]:
                if G.adj[w] >> u & 1 or G.adj[w] >> v & 1:
                    continue
                if cu[v] == cu[w] and cv[u] == cv[w] and comp_id[w][u] == comp_id[w][v]:
                    return True
    return False


def is_interval(G: Graph, within: Optional[int] = None) -> bool:
    """Chordal and free of asteroidal triples."""
    scope = _scope(G, within)
    if popcount(scope) <= 3:
        return is_chordal(G, scope)
    return is_chordal(G, scope) and not has_asteroidal_triple(G, scope)


def clique_path(G: Graph, within: Optional[int] = None) -> Optional[list[int]]:
    """An ordering of the maximal cliques in which every vertex's cliques are
    consecutive, or ``None`` if none exists (or the graph is not chordal)."""
    scope = _scope(G, within)
    if not is_chordal(G, scope):
        return None
    bags = maximal_cliques_chordal(G, scope)
    k = len(bags)
    if k <= 1:
        return bags
    dead: set[tuple[int, int]] = set()

    def extend(placed: int, covered: int, last: int, path: list[int]) -> Optional[list[int]]:
        if placed == (1 << k) - 1:
            return path
        if (placed, last) in dead:
            return None
        for i in range(k):
            if placed >> i & 1:
                continue
            # a vertex seen before must still be "open", i.e. in the last bag
            if bags[i] & covered & ~bags[last]:
                continue
            found = extend(placed | 1 << i, covered | bags[i], i, path + [bags[i]])
            if found is not None:
                return found
        dead.add((placed, last))
        return None

    for start in range(k):
        found = extend(1 << start, bags[start], start, [bags[start]])
        if found is not None:
            return found
    return None


def _require_clique(G: Graph, S: int) -> None:
    if not is_clique(G, S):
        raise NotACliqueError(f"{members(S)} is not a clique")


def separator_test_chordal(G: Graph, S: int, within: Optional[int] = None) -> bool:
    _require_clique(G, S)
    return is_chordal(G, within)


def end_bag_extension(G: Graph, S: int, within: Optional[int] = None) -> Graph:
    """``G[within]`` plus ``v`` adjacent to ``S`` and a pendant ``v'`` on ``v``.

    Returned vertices ``n`` and ``n+1`` of the result are ``v`` and ``v'``;
    the original vertices keep their ids (vertices outside ``within`` become
    isolated and are excluded by the returned scope in ``separator_test_interval``).
    """
    scope = _scope(G, within)
    n = G.n
    adj = [a & scope if (scope >> i & 1) else 0 for i, a in enumerate(G.adj)]
    for u in iter_members(S):
        adj[u] |= 1 << n
    adj.append(S | (1 << (n + 1)))
    adj.append(1 << n)
    return Graph(n + 2, tuple(adj))


def separator_test_interval(G: Graph, S: int, within: Optional[int] = None) -> bool:
    """Interval with a clique path whose end bag contains ``S``."""
    _require_clique(G, S)
    scope = _scope(G, within)
    if S & ~scope:
        raise ValueError("S must lie inside the tested vertex set")
    ext = end_bag_extension(G, S, scope)
    return is_interval(ext, scope | (0b11 << G.n))


# Lekkerkerker-Boland obstructions ------------------------------------------

def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def bipartite_claw() -> Graph:
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def umbrella() -> Graph:
    # 0..4 is a path, 5 sees all of it, 6 hangs off the middle of the path
    path = [(i, i + 1) for i in range(4)]
    return Graph.from_edges(7, path + [(5, i) for i in range(5)] + [(6, 2)])


def net(k: int) -> Graph:
    """``k``-net, ``k >= 2``: path ``0..k-1`` under a common neighbour ``k``,
    with pendants on both path ends and on ``k``."""
    if k < 2:
        raise ValueError("k-net needs k >= 2")
    top = k
    edges = [(i, i + 1) for i in range(k - 1)] + [(top, i) for i in range(k)]
    edges += [(top, k + 1), (0, k + 2), (k - 1, k + 3)]
    return Graph.from_edges(k + 4, edges)


def tent(k: int) -> Graph:
    """``k``-tent, ``k >= 3``: path ``0..k-1``; ``k`` sees ``0..k-2``,
    ``k+1`` sees ``1..k-1``; ``k`` and ``k+1`` share the apex ``k+2``."""
    if k < 3:
        raise ValueError("k-tent needs k >= 3")
    left, right, apex = k, k + 1, k + 2
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(left, i) for i in range(k - 1)] + [(right, i) for i in range(1, k)]
    edges += [(left, right), (apex, left), (apex, right)]
    return Graph.from_edges(k + 3, edges)


def interval_obstructions(size: int) -> Iterator[Graph]:
    """Chordal Lekkerkerker-Boland graphs on exactly ``size`` vertices."""
    if size == 7:
        yield bipartite_claw()
        yield umbrella()
    if size >= 6:
        yield net(size - 4)
    if size >= 6:
        yield tent(size - 3)


def find_induced_copy(G: Graph, pattern: Graph, within: Optional[int] = None) -> Optional[int]:
    """Vertex set of an induced copy of a connected ``pattern`` in ``G[within]``."""
    scope = _scope(G, within)
    k = pattern.n
    if k == 0:
        return 0
    if popcount(scope) < k:
        return None
    deg_p = [popcount(a) for a in pattern.adj]
    root = max(range(k), key=lambda p: (deg_p[p], -p))
    order = [root]
    parent = {root: -1}
    seen = 1 << root
    i = 0
    while i < len(order):
        for q in iter_members(pattern.adj[order[i]] & ~seen):
            seen |= 1 << q
            parent[q] = order[i]
            order.append(q)
        i += 1
    for q in range(k):  # disconnected leftovers
        if not seen >> q & 1:
            seen |= 1 << q
            parent[q] = -1
            order.append(q)
    pos = {q: i for i, q in enumerate(order)}
    deg_g = {v: popcount(G.adj[v] & scope) for v in iter_members(scope)}
    image = [0] * k

    def place(i: int, used: int) -> Optional[int]:
        if i == k:
            return used
        q = order[i]
        need = 0
        for r in iter_members(pattern.adj[q]):
            if pos[r] < i:
                need |= 1 << image[pos[r]]
        if parent[q] >= 0:
            cands = G.adj[image[pos[parent[q]]]] & scope & ~used
        else:
            cands = scope & ~used
        for w in iter_members(cands):
            if deg_g[w] < deg_p[q] or (G.adj[w] & used) != need:
                continue
            image[i] = w
            found = place(i + 1, used | (1 << w))
            if found is not None:
                return found
        return None

    return place(0, 0)


def find_forbidden_interval(G: Graph, ell: int, within: Optional[int] = None) -> Optional[int]:
    """A smallest Lekkerkerker-Boland obstruction with at most ``ell`` vertices."""
    if ell < 4:
        raise ValueError("ell must be at least 4")
    scope = _scope(G, within)
    if is_interval(G, scope):
        return None
    hole = shortest_hole(G, scope, max_len=ell)
    hole_len = popcount(hole) if hole is not None else math.inf
    for size in range(4, min(ell, popcount(scope)) + 1):
        if size == hole_len:
            return hole
        for pattern in interval_obstructions(size):
            found = find_induced_copy(G, pattern, scope)
            if found is not None:
                return found
    return None
