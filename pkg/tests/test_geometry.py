import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scs_resilience.errors import (
    DisconnectedGraph,
    EdgeOutOfRange,
    NotBipartite,
    NotSynchronizable,
    OverlappingCircles,
    UnknownEdge,
    ValidationError,
)
from scs_resilience.generators import cycle, random_lattice
from scs_resilience.geometry import (
    CCW,
    CW,
    CommunicationGraph,
    Point,
    is_synchronized,
    link_angles,
    make_instance,
    normalize_angle,
    potential_links,
    synthesize_schedule,
    two_color_directions,
)


def test_normalize_angle_range():
    assert 0.0 <= normalize_angle(-1e-18) < 2 * math.pi
    assert normalize_angle(2 * math.pi) == 0.0
    assert normalize_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)


def test_potential_links_by_distance():
    pts = [Point(0, 0), Point(2.2, 0), Point(4.6, 0)]
    assert potential_links(pts, 0.3) == {(0, 1)}
    assert potential_links(pts, 0.45) == {(0, 1), (1, 2)}


def test_touching_circles_rejected():
    with pytest.raises(OverlappingCircles) as info:
        potential_links([Point(0, 0), Point(2.0, 0)], 0.3)
    assert info.value.pair == (0, 1)


def test_link_angles_face_each_other(pair):
    link = link_angles(pair, (0, 1))
    assert link.phi_ij == pytest.approx(0.0)
    assert link.phi_ji == pytest.approx(math.pi)
    with pytest.raises(UnknownEdge):
        link_angles(pair, (0, 5))


def test_two_coloring_alternates(square):
    colors = two_color_directions(square.graph)
    assert colors[0] == CCW
    for i, j in square.graph.edges:
        assert colors[i] == -colors[j]


def test_odd_cycle_rejected():
    g = CommunicationGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotBipartite) as info:
        two_color_directions(g)
    assert len(info.value.cycle) % 2 == 1


def test_triangle_of_circles_not_bipartite():
    h = 2.2 * math.sqrt(3) / 2
    with pytest.raises(NotBipartite):
        make_instance([(0, 0), (2.2, 0), (1.1, h)], 0.3)


def test_synthesized_schedule_synchronizes_every_edge(square):
    for e in square.graph.edges:
        assert is_synchronized(square, e)
    assert square.schedule.starts[0] == 0.0


def test_square_schedule_matches_hand_derivation():
    inst = make_instance([(0, 0), (2.2, 0), (2.2, 2.2), (0, 2.2)], 0.3)
    f = inst.schedule.starts
    assert f[0] == pytest.approx(0.0)
    assert f[1] == pytest.approx(math.pi)
    assert f[2] == pytest.approx(math.pi)
    assert f[3] == pytest.approx(0.0, abs=1e-12) or f[3] == pytest.approx(2 * math.pi)
    assert inst.schedule.directions == (CCW, CW, CCW, CW)


def test_explicit_bad_start_rejected():
    with pytest.raises(NotSynchronizable):
        make_instance([(0, 0), (2.2, 0)], 0.3, starts={0: 0.0, 1: 0.5})


def test_same_directions_on_edge_rejected():
    with pytest.raises(ValidationError):
        make_instance([(0, 0), (2.2, 0)], 0.3, directions={0: 1, 1: 1})


def test_rhombus_cycle_not_synchronizable():
    # a 70 degree rhombus: bipartite 4-cycle whose link angles do not line up
    a = math.radians(70)
    s = 2.2
    pts = [(0, 0), (s, 0), (s + s * math.cos(a), s * math.sin(a)), (s * math.cos(a), s * math.sin(a))]
    with pytest.raises(NotSynchronizable):
        make_instance(pts, 0.3)


def test_epsilon_bounds():
    for eps in (0.0, 0.5, 0.6, -0.1):
        with pytest.raises(ValidationError):
            make_instance([(0, 0)], eps)


def test_edge_out_of_range_and_disconnected():
    with pytest.raises(EdgeOutOfRange):
        make_instance([(0, 0), (2.2, 0), (5.0, 0)], 0.3, edges=[(0, 1), (1, 2)])
    with pytest.raises(DisconnectedGraph):
        make_instance([(0, 0), (2.2, 0), (9.0, 0)], 0.3)


def test_single_circle_is_valid():
    inst = make_instance([(1.0, 1.0)], 0.3)
    assert inst.n == 1 and not inst.graph.edges


@given(st.integers(2, 10).map(lambda k: 2 * k))
def test_regular_even_polygons_synchronize(n):
    inst = cycle(n)
    assert len(inst.graph.edges) == n
    assert all(is_synchronized(inst, e) for e in inst.graph.edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), st.integers(0, 10**6), st.sampled_from(["square", "honeycomb"]))
def test_lattice_patches_synchronize(n, seed, kind):
    import random

    inst = random_lattice(n, random.Random(seed), kind)
    assert inst.graph.is_connected()
    resynth = synthesize_schedule(inst, dict(enumerate(inst.schedule.directions)))
    assert resynth == inst.schedule
