import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import graphs, random_graph
from maxpi.enumeration import (
    TableInstance,
    closed_indicator,
    enumerate_connected_sets,
    enumerate_connected_supersets,
    two_table_solve,
)
from maxpi.graph import Graph, connected_components, members, neighborhood, popcount
from maxpi.oracle import brute_force_connected_sets

STAR = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def test_star_examples():
    assert enumerate_connected_sets(STAR, 0, 1, 2) == [0b0011, 0b0101, 0b1001]
    assert enumerate_connected_sets(STAR, 1, 0, 1) == [0b0010]
    assert enumerate_connected_sets(STAR, 1, 3, 0) == [0b1111]
    assert enumerate_connected_sets(STAR, 0, 4, 0) == []


@given(graphs(min_n=1, max_n=7), st.data())
def test_matches_brute_force_and_bound(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    b = data.draw(st.integers(0, G.n - 1))
    f = data.draw(st.integers(0, G.n - 1 - b))
    got = enumerate_connected_sets(G, v, b, f)
    assert got == brute_force_connected_sets(G, v, b, f)
    assert len(got) <= comb(b + f, b)


def test_within_restricts_scope():
    P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert enumerate_connected_sets(P4, 0, 1, 0, within=0b0011) == [0b0011]
    with pytest.raises(ValueError):
        enumerate_connected_sets(P4, 3, 0, 0, within=0b0011)


@given(graphs(min_n=1, max_n=7), st.data())
def test_supersets(G, data):
    P = data.draw(st.integers(1, G.vertices))
    size = data.draw(st.integers(popcount(P), G.n))
    f = data.draw(st.integers(0, G.n))
    got = enumerate_connected_supersets(G, P, size, f)
    expected = []
    for B in range(1 << G.n):
        if B & P != P or popcount(B) != size or popcount(neighborhood(G, B)) != f:
            continue
        if all(c & P for c in connected_components(G, B)):
            expected.append(B)
    assert sorted(got) == sorted(expected)


def test_superset_errors():
    with pytest.raises(ValueError):
        enumerate_connected_supersets(STAR, 0, 1, 0)
    with pytest.raises(ValueError):
        enumerate_connected_supersets(STAR, 0b11, 1, 0)


def quadratic(inst):
    for i, a in enumerate(inst.cols1):
        for j, b in enumerate(inst.cols2):
            if all(x + y == t for x, y, t in zip(a, b, inst.target)):
                yield i, j


@given(st.integers(0, 6), st.integers(0, 12), st.integers(0, 12), st.integers(0, 10**6))
def test_two_table_agrees_with_scan(k, m1, m2, seed):
    rng = random.Random(seed)
    cols = lambda m: [[rng.randint(0, 1) for _ in range(k)] for _ in range(m)]
    inst = TableInstance.build(cols(m1), cols(m2), [rng.randint(0, 2) for _ in range(k)])
    pairs = list(quadratic(inst))
    assert two_table_solve(inst) == (min(pairs) if pairs else None)


def test_two_table_validation_and_stats():
    with pytest.raises(ValueError):
        TableInstance.build([[2]], [[0]], [1])
    with pytest.raises(ValueError):
        TableInstance.build([[0]], [[0]], [3])
    with pytest.raises(ValueError):
        TableInstance.build([[0, 1]], [[0]], [1])
    stats = {}
    inst = TableInstance.build([[1, 0], [0, 1]], [[1, 0], [0, 1]], [1, 1])
    assert two_table_solve(inst, stats) == (0, 1)
    assert stats["comparisons"] > 0


def test_closed_indicator():
    P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert closed_indicator(P4, 0b0001, [0, 1, 2, 3]) == (1, 1, 0, 0)
    assert closed_indicator(P4, 0b0010, [1, 2, 3], within=0b1110) == (1, 1, 0)
