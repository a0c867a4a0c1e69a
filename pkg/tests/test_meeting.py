import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scs_resilience.generators import cycle, path, random_lattice
from scs_resilience.meeting import (
    MeetingGraph,
    brute_force_meet,
    build_meeting_graph,
    count_starving,
    cross_ring_adjacent,
    prevention_test,
    same_ring_edges,
)
from scs_resilience.reduction import circulant_from_ring


def test_square_meeting_graph_is_the_cycle(square):
    g = build_meeting_graph(square)
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert all(c.kind == "cross-ring" for cs in g.certificates.values() for c in cs)


def test_path3_complete(path3):
    g = build_meeting_graph(path3)
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_fig8_ring_adjacency():
    edges = same_ring_edges(9, [2, 4, 5, 7])
    for i in range(9):
        nb = {j for (a, b) in edges for j in (a, b) if i in (a, b) and j != i}
        assert nb == {(i + d) % 9 for d in (2, 4, 5, 7)}


def test_same_ring_edges_certificates():
    edges = same_ring_edges(4, [1, 3])
    assert sorted(edges) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert {c.tie_length for c in edges[(0, 1)]} == {1, 3}


def test_half_length_tie_single_neighbor():
    edges = same_ring_edges(4, [2])
    assert sorted(edges) == [(0, 2), (1, 3)]


def test_cross_ring_rule():
    assert cross_ring_adjacent(4, 6, 2)
    assert not cross_ring_adjacent(4, 6, 1)
    assert cross_ring_adjacent(3, 5, 1)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(-30, 30))
def test_cross_ring_rule_matches_enumeration(la, lb, s):
    # a + i*la == a + s' + j*lb has a solution iff gcd divides the shift
    found = any((s + j * lb - i * la) == 0 for i in range(-40, 41) for j in range(-40, 41))
    assert cross_ring_adjacent(la, lb, s) == found


def test_prevention_rejects_same_robot(square):
    with pytest.raises(ValueError):
        prevention_test(square, 1, 1)
    with pytest.raises(ValueError):
        brute_force_meet(square, 1, 1)


def test_count_starving(square):
    assert count_starving(square, {0, 2}) == {1, 3}
    assert count_starving(square, {0}) == set()
    g = MeetingGraph.from_edges(3, [(0, 1)])
    assert count_starving(g, set()) == {2}


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_path_meeting_graph_matches_brute_force(n):
    inst = path(n)
    for u in range(n):
        for v in range(u + 1, n):
            assert prevention_test(inst, u, v)[0] == brute_force_meet(inst, u, v)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_cycle_meeting_graph_matches_brute_force(n):
    inst = cycle(n)
    for u in range(n):
        for v in range(u + 1, n):
            assert prevention_test(inst, u, v)[0] == brute_force_meet(inst, u, v)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6), st.sampled_from(["square", "honeycomb"]))
def test_same_ring_part_is_circulant(n, seed, kind):
    from scs_resilience.rings import decompose

    inst = random_lattice(n, random.Random(seed), kind)
    dec = decompose(inst)
    g = build_meeting_graph(inst)
    for r in dec.rings:
        robots = dec.ring_robots(r.id)
        l = r.length_slots
        circ = circulant_from_ring(l, dec.tie_lengths[r.id])
        expected = {(min(robots[a], robots[b]), max(robots[a], robots[b])) for a, b in circ.edges()}
        got = {
            e
            for e, cs in g.certificates.items()
            if any(c.kind == "same-ring" for c in cs) and e[0] in robots and e[1] in robots
        }
        assert got == expected
        # shift invariance of same-ring adjacency
        idx = {u: k for k, u in enumerate(robots)}
        shifted = {tuple(sorted(((idx[a] + 1) % l, (idx[b] + 1) % l))) for a, b in got}
        assert shifted == {tuple(sorted((idx[a], idx[b]))) for a, b in got}
