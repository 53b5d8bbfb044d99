import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs, random_graph
from maxpi.classes import make_chordal_class, make_interval_class, overlay_finite_family
from maxpi.graph import Graph, members, popcount
from maxpi.oracle import InstanceSpec, brute_force_max_induced, generate_planted_b2_instance, random_chordal
from maxpi.recognition import bipartite_claw, cycle_graph
from maxpi.solver import (
    BRANCH_KEYS,
    ConstantSchedule,
    ConstantsError,
    band_limits,
    brute_force_inner,
    new_stats,
    solve,
    solve_branch_b1,
    solve_branch_b2,
    solve_case_a,
    solve_step2_band,
    validate_constants,
)

CH, IV = make_chordal_class(), make_interval_class()
K5 = Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])


def test_default_schedule():
    c = ConstantSchedule()
    assert validate_constants(c) == []
    assert c.C == 300 and c.ell == 270001
    assert c.alpha == pytest.approx(1.78e-12, rel=1e-2)
    assert c.zeta == pytest.approx(2 * c.alpha + 0.12 + 0.002 + 0.005)


def test_schedule_violations():
    bad = ConstantSchedule(alpha=0.02, beta=0.06, gamma=0.1, delta=0.05, epsilon=0.08, L=3)
    assert "α < γ/(104C³)" in validate_constants(bad)
    assert "L > 2" in validate_constants(replace(ConstantSchedule(), L=2))
    assert "0 < β < 1/16" in validate_constants(replace(ConstantSchedule(), beta=0.1))
    assert "δ < ε" in validate_constants(replace(ConstantSchedule(), delta=0.01))
    assert validate_constants(ConstantSchedule.scaled()) == []
    with pytest.raises(ConstantsError):
        solve(cycle_graph(4), CH, replace(ConstantSchedule(), L=2), "structured")
    with pytest.raises(ValueError):
        solve(cycle_graph(4), CH, mode="greedy")


def test_schedule_from_file(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# test schedule\ngamma = 0.5\nL=2.5\nalpha = 1e-6\n")
    c = ConstantSchedule.from_file(path)
    assert (c.gamma, c.L, c.alpha) == (0.5, 2.5, 1e-6)
    path.write_text("zeta = 1\n")
    with pytest.raises(ValueError):
        ConstantSchedule.from_file(path)


@pytest.mark.parametrize("mode", ["auto", "structured", "brute", "forced-B1"])
@pytest.mark.parametrize(
    "G,pi,size", [(cycle_graph(5), CH, 4), (K5, CH, 5), (cycle_graph(4), IV, 3), (bipartite_claw(), IV, 6)]
)
def test_solve_examples(mode, G, pi, size):
    sol = solve(G, pi, mode=mode)
    assert sol.size == size and pi.contains(G, sol.vertices)
    assert set(sol.stats["branches"]) == set(BRANCH_KEYS)


def test_brute_force_inner():
    assert popcount(brute_force_inner(cycle_graph(4), CH)) == 3
    assert brute_force_inner(Graph.empty(6), CH) == 0b111111


@settings(max_examples=60)
@given(graphs(max_n=8), st.sampled_from([CH, IV]), st.sampled_from(["auto", "structured"]))
def test_solve_matches_oracle(G, pi, mode):
    sol = solve(G, pi, mode=mode)
    assert pi.contains(G, sol.vertices)
    assert sol.size == popcount(brute_force_max_induced(G, pi))


def test_solve_deterministic_tie_break():
    assert solve(cycle_graph(4), CH, mode="brute").vertices == 0b0111
    assert solve(cycle_graph(4), CH, mode="structured").vertices == 0b0111


def test_case_a_examples():
    K4 = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert solve_case_a(K4, CH, K4.vertices).vertices == K4.vertices
    assert solve_case_a(cycle_graph(4), CH, 0b0011).size == 3
    with pytest.raises(ValueError):
        solve_case_a(cycle_graph(4), CH, 0b0101)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_case_a_matches_oracle(seed):
    from maxpi.graph import maximum_clique

    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 10), rng.random())
    assert solve_case_a(G, CH, maximum_clique(G)).size == popcount(brute_force_max_induced(G, CH))


def test_structured_n20_routes_through_case_a():
    G = random_chordal(20, random.Random(3))
    sol = solve(G, CH, mode="structured")
    assert sol.size == 20 and sol.stats["branches"]["caseA"] > 0


def test_band_examples():
    assert solve_step2_band(K5, CH, 0.05).vertices == K5.vertices
    res = solve_step2_band(cycle_graph(4), CH, 0.05)
    assert res.terminal and popcount(res.vertices) == 3
    assert band_limits(4, 0.05) == (1, 3)
    with pytest.raises(ValueError):
        solve_step2_band(K5, CH, 0.1)


def test_band_continue_when_optimum_is_half():
    # forbidding an edge leaves independent sets; a perfect matching on 8 vertices has optimum 4
    independent = overlay_finite_family(CH, [Graph.from_edges(2, [(0, 1)])])
    G = Graph.from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    res = solve_step2_band(G, independent, 0.05)
    assert not res.terminal and popcount(res.vertices) == band_limits(8, 0.05)[0] == 3
    assert solve(G, independent, mode="auto").size == 4 >= popcount(res.vertices)


def test_b1_two_triangles_through_cut_vertex():
    G = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    sol = solve_branch_b1(G, CH, 0b00100, ConstantSchedule(), (2, 2), forced=True)
    assert sol.vertices == G.vertices
    with pytest.raises(ValueError):
        solve_branch_b1(G, CH, 0b01001, ConstantSchedule(), (1, 1))


def test_b1_two_table_on_disconnected_graph():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    stats = new_stats()
    # a wide delta and epsilon route every triple to the table case
    wide = replace(ConstantSchedule(), delta=0.9, epsilon=0.95)
    sol = solve_branch_b1(G, IV, 0, wide, (3, 3), stats, forced=True)
    assert sol.vertices == G.vertices
    assert stats["branches"]["b13"] > 0 and stats["two_table_columns"] > 0


def test_b1_infeasible_sizes():
    assert solve_branch_b1(K5, CH, 0b1, ConstantSchedule(), (-1, 2)) is None
    assert solve_branch_b1(K5, CH, 0b1, ConstantSchedule(), (3, 3)) is None


@settings(max_examples=40)
@given(graphs(max_n=6), st.sampled_from([CH, IV]))
def test_forced_b1_matches_oracle(G, pi):
    assert solve(G, pi, mode="forced-B1").size == popcount(brute_force_max_induced(G, pi))


def test_b2_matching_under_apex():
    c = ConstantSchedule.scaled()
    G, opt = generate_planted_b2_instance(InstanceSpec("planted-small", 1, {"components": 5, "apex": 1, "attach": 0.2, "max_attach": 2}))
    sol = solve_branch_b2(G, CH, 0, c)
    assert sol.size == opt
    assert sol.stats["candidates_enumerated"] > 0
    with pytest.raises(ValueError):
        solve_branch_b2(cycle_graph(4), CH, 0b0101, c)


def test_b2_terminates_on_tiny_remainder():
    c = ConstantSchedule.scaled(gamma=0.9, L=2.7)
    K6 = Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
    stats = new_stats()
    assert solve_branch_b2(K6, CH, 0b11111, c, stats=stats) is None
    assert stats["candidates_enumerated"] == 0


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("shape", ["edge", "p3", "triangle", "c4"])
def test_forced_b2_on_planted(seed, shape):
    c = ConstantSchedule.scaled(deletion_eps=0.1)
    k = 2 if shape == "c4" else 4
    spec = InstanceSpec("planted-small", seed, {"components": k, "shape": shape, "apex": seed % 3, "attach": 0.3, "max_attach": 2})
    for pi in (CH, IV):
        G, opt = generate_planted_b2_instance(spec, pi)
        sol = solve(G, pi, c, mode="forced-B2")
        assert sol.size == opt


def test_trace_events_are_json():
    events = []
    solve(cycle_graph(6), CH, mode="structured", trace=events.append)
    assert events and all(json.dumps(e) for e in events)
