"""Reference implementations and instance generators for cross-checking.

Nothing here reuses the recognition module: chordality is decided by
simplicial elimination, interval graphs by ordering maximal cliques (found
with Bron-Kerbosch), and forbidden copies by plain permutation matching.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterator, Optional

from .classes import PiClass
from .graph import Graph

DEFAULT_CAP = 22
CONNECTED_SETS_CAP = 16


class OracleRefusal(RuntimeError):
    """The instance is too large for exhaustive search."""


class GeneratorError(RuntimeError):
    """A generated instance failed its own ground-truth verification."""


def oracle_cap() -> int:
    return int(os.environ.get("MAXPI_ORACLE_CAP", DEFAULT_CAP))


def _sub_adj(G: Graph, vs: tuple[int, ...]) -> dict[int, set[int]]:
    keep = set(vs)
    return {v: {u for u in range(G.n) if G.adj[v] >> u & 1 and u in keep} for v in vs}


def chordal_by_elimination(G: Graph, vs: tuple[int, ...]) -> bool:
    adj = _sub_adj(G, vs)
    while adj:
        for v, nb in adj.items():
            if all(b in adj[a] for a, b in combinations(nb, 2)):
                break
        else:
            return False
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
    return True


def maximal_cliques(G: Graph, vs: tuple[int, ...]) -> list[frozenset[int]]:
    adj = _sub_adj(G, vs)
    out: list[frozenset[int]] = []

    def bk(R: set[int], P: set[int], X: set[int]) -> None:
        if not P and not X:
            out.append(frozenset(R))
            return
        for v in list(P):
            bk(R | {v}, P & adj[v], X & adj[v])
            P.remove(v)
            X.add(v)

    bk(set(), set(vs), set())
    return out


def cliques_orderable(cliques: list[frozenset[int]]) -> bool:
    """Some order of the cliques puts every vertex in a consecutive run."""
    k = len(cliques)
    if k <= 1:
        return True
    seen: set[tuple[int, int]] = set()

    def extend(placed: int, last: int) -> bool:
        if placed == (1 << k) - 1:
            return True
        if (placed, last) in seen:
            return False
        seen.add((placed, last))
        used = set().union(*(cliques[i] for i in range(k) if placed >> i & 1))
        for j in range(k):
            if placed >> j & 1:
                continue
            # a vertex already placed may only continue from the last clique
            if all(v in cliques[last] for v in cliques[j] & used):
                if extend(placed | 1 << j, j):
                    return True
        return False

    return any(extend(1 << i, i) for i in range(k))


def interval_by_clique_order(G: Graph, vs: tuple[int, ...]) -> bool:
    return chordal_by_elimination(G, vs) and cliques_orderable(maximal_cliques(G, vs))


def contains_copy(G: Graph, vs: tuple[int, ...], F: Graph) -> bool:
    f_edges = {(u, v) for u, v in F.edges()}
    for sub in combinations(vs, F.n):
        for perm in permutations(sub):
            if all(
                G.has_edge(perm[a], perm[b]) == ((min(a, b), max(a, b)) in f_edges)
                for a, b in combinations(range(F.n), 2)
            ):
                return True
    return False


def oracle_membership(pi: PiClass) -> Callable[[Graph, tuple[int, ...]], bool]:
    """Independent membership test for the built-in classes and their overlays."""
    root = pi.root.name
    if root == "chordal":
        base = chordal_by_elimination
    elif root == "interval":
        base = interval_by_clique_order
    else:
        return lambda G, vs: pi.contains(G, sum(1 << v for v in vs))
    family = pi.overlay_family
    return lambda G, vs: base(G, vs) and not any(contains_copy(G, vs, F) for F in family)


def brute_force_max_induced(G: Graph, pi: PiClass, cap: Optional[int] = None) -> int:
    """Maximum member set by descending size; lexicographically smallest on ties."""
    cap = oracle_cap() if cap is None else cap
    if G.n > cap:
        raise OracleRefusal(f"n={G.n} exceeds the oracle cap {cap}")
    member = oracle_membership(pi)
    for k in range(G.n, -1, -1):
        for vs in combinations(range(G.n), k):
            if member(G, vs):
                return sum(1 << v for v in vs)
    return 0


def _connected(G: Graph, vs: set[int]) -> bool:
    if not vs:
        return True
    start = next(iter(vs))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in vs:
            if w not in seen and G.has_edge(u, w):
                seen.add(w)
                stack.append(w)
    return seen == vs


def brute_force_connected_sets(G: Graph, v: int, b: int, f: int) -> list[int]:
    if G.n > CONNECTED_SETS_CAP:
        raise OracleRefusal(f"n={G.n} exceeds {CONNECTED_SETS_CAP}")
    out = []
    for mask in range(1 << G.n):
        vs = {u for u in range(G.n) if mask >> u & 1}
        if v not in vs or len(vs) != b + 1 or not _connected(G, vs):
            continue
        nbrs = {w for u in vs for w in range(G.n) if G.has_edge(u, w)} - vs
        if len(nbrs) == f:
            out.append(mask)
    return sorted(out, key=lambda m: [u for u in range(G.n) if m >> u & 1])


@dataclass(frozen=True)
class InstanceSpec:
    """``kind`` is one of ``labeled``, ``gnp``, ``chordal``, ``interval``,
    ``planted-separator`` or ``planted-small``."""

    kind: str
    seed: int = 0
    params: dict = field(default_factory=dict)


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_chordal(n: int, rng: random.Random, density: float = 0.5) -> Graph:
    """Each new vertex joins a clique grown around a random earlier vertex."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        clique = {u}
        for w in rng.sample(sorted(adj[u]), len(adj[u])):
            if rng.random() < density and all(w in adj[x] for x in clique):
                clique.add(w)
        if rng.random() < 0.15:
            clique = set()
        for w in clique:
            adj[v].add(w)
            adj[w].add(v)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_interval(n: int, rng: random.Random, spread: float = 3.0) -> Graph:
    ivs = []
    for _ in range(n):
        a = rng.uniform(0, n)
        ivs.append((a, a + rng.uniform(0, spread)))
    return Graph.from_edges(
        n, [(u, v) for u, v in combinations(range(n), 2) if ivs[u][0] <= ivs[v][1] and ivs[v][0] <= ivs[u][1]]
    )


def planted_separator(rng: random.Random, side: int, sep: int, density: float = 0.5) -> Graph:
    """Two random chordal sides, both fully joined to one clique separator."""
    n = 2 * side + sep
    left, right = random_chordal(side, rng, density), random_chordal(side, rng, density)
    edges = [(u, v) for u, v in left.edges()] + [(u + side, v + side) for u, v in right.edges()]
    S = range(2 * side, n)
    edges += list(combinations(S, 2))
    edges += [(s, u) for s in S for u in range(2 * side) if rng.random() < density]
    return Graph.from_edges(n, edges)


SHAPES = {
    "edge": (2, [(0, 1)]),
    "p3": (3, [(0, 1), (1, 2)]),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "c4": (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "c5": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
}


def generate(spec: InstanceSpec) -> Iterator[Graph]:
    """Graphs described by ``spec``; a pure function of the spec and its seed."""
    rng = random.Random(spec.seed)
    p = spec.params
    if spec.kind == "labeled":
        yield from all_labeled_graphs(p["n"])
    elif spec.kind == "gnp":
        for _ in range(p.get("count", 1)):
            yield gnp(rng.randint(p["n_min"], p["n_max"]), rng.choice(p["p"]), rng)
    elif spec.kind == "chordal":
        for _ in range(p.get("count", 1)):
            yield random_chordal(rng.randint(p["n_min"], p["n_max"]), rng, rng.random())
    elif spec.kind == "interval":
        for _ in range(p.get("count", 1)):
            yield random_interval(rng.randint(p["n_min"], p["n_max"]), rng)
    elif spec.kind == "planted-separator":
        for _ in range(p.get("count", 1)):
            yield planted_separator(rng, p.get("side", 4), p.get("sep", 1))
    elif spec.kind == "planted-small":
        yield generate_planted_b2_instance(spec)[0]
    else:
        raise ValueError(f"unknown instance kind {spec.kind!r}")


def generate_planted_b2_instance(spec: InstanceSpec, pi: Optional[PiClass] = None) -> tuple[Graph, int]:
    """Disjoint small components plus an apex clique, with a verified optimum.

    Parameters: ``components`` (count), ``shape`` (see ``SHAPES``), ``apex``
    (clique size), ``attach`` (edge probability apex to component) and
    ``max_attach`` (cap on each apex vertex's component neighbours).  The
    optimum is the exhaustive one; it must dominate the per-component optima
    glued together, and equal that sum when there is no apex.
    """
    from .classes import make_chordal_class

    pi = pi if pi is not None else make_chordal_class()
    rng = random.Random(spec.seed)
    p = spec.params
    k = p.get("components", 0)
    size, shape_edges = SHAPES[p.get("shape", "edge")]
    apex = p.get("apex", 0)
    attach = p.get("attach", 0.0)
    max_attach = p.get("max_attach")
    body = k * size
    n = body + apex
    edges = [(i * size + u, i * size + v) for i in range(k) for u, v in shape_edges]
    edges += [(body + a, body + b) for a, b in combinations(range(apex), 2)]
    for a in range(apex):
        targets = [u for u in range(body) if rng.random() < attach]
        if max_attach is not None:
            targets = targets[:max_attach]
        edges += [(body + a, u) for u in targets]
    G = Graph.from_edges(n, edges)

    piece = Graph.from_edges(size, shape_edges)
    certified = k * brute_force_max_induced(piece, pi).bit_count()
    optimum = brute_force_max_induced(G, pi).bit_count()
    if optimum < certified or (apex == 0 and optimum != certified):
        raise GeneratorError(f"oracle optimum {optimum} contradicts the construction ({certified})")
    return G, optimum



def is_clique_path(order: tuple[frozenset[int], ...], vs: tuple[int, ...]) -> bool:
    for v in vs:
        hits = [i for i, q in enumerate(order) if v in q]
        if hits and hits[-1] - hits[0] + 1 != len(hits):
            return False
    return True


def end_bag_by_enumeration(G: Graph, S: int) -> bool:
    """Some order of the maximal cliques is a clique path with ``S`` inside an end clique."""
    vs = tuple(range(G.n))
    if not chordal_by_elimination(G, vs):
        return False
    need = {v for v in vs if S >> v & 1}
    return any(
        (need <= order[0] or need <= order[-1]) and is_clique_path(order, vs)
        for order in permutations(maximal_cliques(G, vs))
    )
