"""The twelve acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import math
import random
from itertools import combinations

import mpmath
import networkx as nx
import numpy as np
import pytest

from conftest import record
from maxpi.branching import (
    SigmaConstants,
    degree_reduction_branch,
    enumerate_small_side_candidates,
    max_clique_extension,
    split_pairs,
    third_fact_holds,
)
from maxpi.classes import make_chordal_class, make_interval_class, overlay_finite_family
from maxpi.enumeration import TableInstance, enumerate_connected_sets, two_table_solve
from maxpi.graph import Graph, connected_components, is_clique, members, neighborhood, popcount
from maxpi.oracle import (
    all_labeled_graphs,
    brute_force_max_induced,
    end_bag_by_enumeration,
    gnp,
    maximal_cliques,
    oracle_membership,
    random_chordal,
)
from maxpi.recognition import balanced_clique_separator, separator_test_interval
from maxpi.solver import solve

CH, IV = make_chordal_class(), make_interval_class()
CLAW = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
SIGMA = SigmaConstants.default()
SIGMA_ROUNDED = 0.97313


def labeled_upto(n):
    for k in range(n + 1):
        yield from all_labeled_graphs(k)


def random_sample(count, n_lo, n_hi, seed, ps=(0.2, 0.5, 0.8)):
    rng = random.Random(seed)
    return [gnp(rng.randint(n_lo, n_hi), rng.choice(ps), rng) for _ in range(count)]


def atlas(max_n=7):
    for H in nx.graph_atlas_g():
        if H.number_of_nodes() <= max_n:
            yield Graph.from_edges(H.number_of_nodes(), list(H.edges()))


def oracle_sweep(pi, instances):
    checked, mismatches = 0, []
    for G in instances:
        got = solve(G, pi, mode="auto")
        want = popcount(brute_force_max_induced(G, pi))
        checked += 1
        if got.size != want or not pi.contains(G, got.vertices):
            mismatches.append((G, got.size, want))
    return checked, mismatches


@pytest.mark.parametrize("number,pi", [(1, CH), (2, IV)], ids=["chordal", "interval"])
def test_oracle_equivalence(number, pi):
    instances = list(labeled_upto(6)) + random_sample(500, 7, 12, seed=number)
    checked, bad = oracle_sweep(pi, instances)
    record(number, f"oracle equivalence, {pi.name}", not bad, f"{checked} graphs, {len(bad)} mismatches")
    assert not bad


def test_overlay_oracle_equivalence():
    pi = overlay_finite_family(IV, [CLAW])
    instances = list(labeled_upto(6)) + random_sample(200, 1, 10, seed=3)
    checked, bad = oracle_sweep(pi, instances)
    record(3, "overlay interval + claw", not bad, f"{checked} graphs, {len(bad)} mismatches")
    assert not bad


def connected_set_table(G):
    """(v, b, f) -> sorted connected sets, by direct inspection of every subset."""
    table = {}
    for mask in range(1, 1 << G.n):
        comps = connected_components(G, mask)
        if len(comps) != 1:
            continue
        b, f = popcount(mask) - 1, popcount(neighborhood(G, mask))
        for v in members(mask):
            table.setdefault((v, b, f), []).append(mask)
    return table


def test_connected_set_bound():
    rng = random.Random(4)
    graphs = list(labeled_upto(5)) + list(atlas(7)) + [gnp(8, rng.choice([0.2, 0.4, 0.6, 0.8]), rng) for _ in range(300)]
    cases = bad = over = 0
    for G in graphs:
        table = connected_set_table(G)
        for v in range(G.n):
            for b in range(G.n):
                for f in range(G.n - b):
                    got = enumerate_connected_sets(G, v, b, f)
                    cases += 1
                    bad += got != sorted(table.get((v, b, f), []), key=members)
                    over += len(got) > math.comb(b + f, b)
    ok = bad == 0 and over == 0
    record(4, "connected-set enumeration", ok, f"{len(graphs)} graphs, {cases} (v,b,f) cases, {bad} mismatches, {over} over bound")
    assert ok


def test_two_table():
    rng = np.random.default_rng(5)
    ratios, bad, hits = [], 0, 0
    for trial in range(1000):
        k, m1, m2 = int(rng.integers(1, 21)), int(rng.integers(1, 1001)), int(rng.integers(1, 1001))
        A = rng.integers(0, 2, size=(m1, k))
        B = rng.integers(0, 2, size=(m2, k))
        if trial % 2:
            target = A[rng.integers(m1)] + B[rng.integers(m2)]
        else:
            target = rng.integers(0, 3, size=k)
        stats = {}
        got = two_table_solve(TableInstance.build(A.tolist(), B.tolist(), target.tolist()), stats)
        match = (A[:, None, :] + B[None, :, :] == target).all(axis=2)
        idx = np.argwhere(match)
        want = tuple(int(x) for x in idx[0]) if len(idx) else None
        bad += got != want
        hits += want is not None
        ratios.append(stats["comparisons"] / ((m1 + m2) * math.log2(m1 + 1)))
    spread = max(ratios) / min(ratios)
    ok = bad == 0 and spread <= 4
    record(5, "2-table", ok, f"1000 instances ({hits} solvable), {bad} mismatches, comparison ratio in [{min(ratios):.2f}, {max(ratios):.2f}] spread {spread:.2f}x")
    assert ok


def test_balanced_separator():
    rng = random.Random(6)
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 40)
        H = random_chordal(n, rng, rng.random())
        s = balanced_clique_separator(H)
        cross = any(H.adj[v] & s.X2 for v in members(s.X1))
        sizes_ok = max(popcount(s.X1), popcount(s.X2)) <= math.ceil(2 * n / 3)
        partition = s.S | s.X1 | s.X2 == H.vertices and not (s.S & s.X1 or s.S & s.X2 or s.X1 & s.X2)
        bad += not (is_clique(H, s.S) and not cross and sizes_ok and partition)
    record(6, "balanced clique separator", bad == 0, f"500 chordal graphs (n <= 40), {bad} violations")
    assert bad == 0


def hundred_graphs():
    rng = random.Random(7)
    return [(gnp(rng.randint(1, 14), rng.choice([0.2, 0.4, 0.6, 0.8]), rng), rng.choice([1, 2, 3])) for _ in range(100)]


def potential_holds(pairs, n, sigma):
    with mpmath.workdps(60):
        s = mpmath.mpf(sigma)
        return mpmath.fsum(mpmath.power(2, s * p.undecided) for p in pairs) <= mpmath.power(2, s * n)


def test_potential_bound():
    bad_sum = bad_light = 0
    worst = 0.0
    for R, C in hundred_graphs():
        pairs = degree_reduction_branch(R, C)
        for p in pairs:
            alive = R.vertices & ~p.D
            bad_light += any(popcount(R.adj[v] & alive) >= 3 * C for v in members(alive))
        bad_sum += not potential_holds(pairs, R.n, SIGMA.sigma)
        bad_sum += not potential_holds(pairs, R.n, SIGMA_ROUNDED)
        worst = max(worst, sum(2 ** (SIGMA.sigma * (p.undecided - R.n)) for p in pairs))
    ok = bad_sum == 0 and bad_light == 0
    record(7, "potential bound", ok, f"100 graphs, sigma={SIGMA.sigma:.6f} and {SIGMA_ROUNDED}, worst sum/bound {worst:.4f}, {bad_light} heavy leftovers")
    assert ok


def test_subset_fact():
    failing = [n for n in range(31) if not third_fact_holds(n)]
    record(8, "subset fact", not failing, f"n = 0..30 exact, failing {failing}")
    assert not failing


def planted_small_set(R, C, rng):
    Y = sum(1 << v for v in range(R.n) if rng.random() < rng.random())
    while True:
        big = [c for c in connected_components(R, Y) if popcount(c) > C]
        if not big:
            return Y
        Y &= ~(1 << rng.choice(members(big[0])))


def test_candidate_count_and_containment():
    rng = random.Random(9)
    over = missing = checked = 0
    for R, C in hundred_graphs():
        pairs = degree_reduction_branch(R, C)
        cands = set(enumerate_small_side_candidates(R, C))
        over += len(cands) > 2 * 2 ** (SIGMA.rho * R.n)
        for _ in range(1000):
            Y = planted_small_set(R, C, rng)
            cover = [p for p in pairs if not p.A & ~Y and not p.D & Y]
            missing += not cover
            for p in cover:
                Q = R.vertices & ~(p.A | p.D)
                small, _ = split_pairs([p])
                if small or 3 * popcount(Q & Y) >= 2 * popcount(Q):
                    checked += 1
                    missing += Y not in cands
    ok = over == 0 and missing == 0
    record(9, "candidate count and containment", ok, f"100 graphs x 1000 planted sets, {checked} conditional checks, {over} over count, {missing} missing")
    assert ok


def test_forced_b1_completeness():
    graphs = list(labeled_upto(5)) + list(atlas(7))
    bad = [G for G in graphs if solve(G, CH, mode="forced-B1").size != popcount(brute_force_max_induced(G, CH))]
    record(10, "forced-B1 completeness, chordal", not bad, f"{len(graphs)} graphs (labeled n <= 5, all n <= 7 up to isomorphism), {len(bad)} mismatches")
    assert not bad


def test_clique_extension():
    rng = random.Random(11)
    bad = total = 0
    for pi in (CH, IV):
        member = oracle_membership(pi)
        for _ in range(500):
            G = gnp(rng.randint(2, 10), rng.random(), rng)
            order = rng.sample(range(G.n), G.n)
            K = 0
            for v in order:
                if popcount(K) < 6 and is_clique(G, K | 1 << v) and rng.random() < 0.8:
                    K |= 1 << v
            P = sum(1 << v for v in range(G.n) if not K >> v & 1 and rng.random() < 0.6)
            while not member(G, tuple(members(P))):
                P &= P - 1
            W = max_clique_extension(G, P, K, pi)
            best = max(
                (popcount(X) for k in range(popcount(K) + 1) for X in map(lambda c: sum(1 << v for v in c), combinations(members(K), k))
                 if member(G, tuple(members(P | X)))),
            )
            total += 1
            bad += popcount(W & ~P) != best or W & P != P or not member(G, tuple(members(W)))
    record(11, "clique extension", bad == 0, f"{total} instances (chordal and interval), {bad} mismatches")
    assert bad == 0


def test_interval_end_bag():
    graphs = [G for G in list(labeled_upto(5)) + list(atlas(7))
              if oracle_membership(IV)(G, tuple(range(G.n))) and len(maximal_cliques(G, tuple(range(G.n)))) <= 5]
    cases = bad = 0
    for G in graphs:
        for S in range(1 << G.n):
            if is_clique(G, S):
                cases += 1
                bad += separator_test_interval(G, S) != end_bag_by_enumeration(G, S)
    record(12, "interval end-bag test", bad == 0, f"{len(graphs)} interval graphs, {cases} (graph, S) cases, {bad} mismatches")
    assert bad == 0
