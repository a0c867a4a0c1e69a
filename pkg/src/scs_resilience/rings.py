"""Ring decomposition of a synchronized system.

A directed arc is the stretch of a circle between two consecutive link
positions, taken in the circle's travel direction. Following an arc to its
end link and jumping to the neighbor's arc that starts at the facing link
defines a permutation of arcs; its cycles are the rings.

Lengths are kept in *slots*: one slot is 2*pi of arc, which is also one unit
of time. Ring and tie lengths are integers in slots; offsets of points on a
ring are measured in slots from the start of the ring's origin arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DirectionNotOnRing,
    NonIntegralRingLength,
    NonIntegralTieLength,
    PlacementSpacingViolation,
)
from .geometry import ANGLE_TOL, TWO_PI, Instance, normalize_angle

SLOT_TOL = 1e-6
_SNAP = 1e-9


@dataclass(frozen=True)
class DirectedArc:
    circle: int
    from_angle: float
    to_angle: float
    direction: int
    length: float
    from_link: int | None = None  # neighbor whose link position starts the arc
    to_link: int | None = None

    @property
    def length_slots(self) -> float:
        return self.length / TWO_PI


@dataclass(frozen=True)
class Ring:
    id: int
    arcs: tuple[DirectedArc, ...]
    offsets: tuple[float, ...]  # start of each arc, in slots
    length_slots: int

    def circles(self) -> list[int]:
        return [a.circle for a in self.arcs]


@dataclass(frozen=True)
class CrossingPoint:
    """Crossing point of the link between circles ``i < j``.

    Direction ``(i, j)`` is the passage from C_i to C_j. Its position is the
    offset where the arc of C_j starting at the link toward C_i begins.
    """

    id: int
    edge: tuple[int, int]
    dir_ij_ring: int
    dir_ji_ring: int
    dir_ij_offset: float
    dir_ji_offset: float

    @property
    def is_self_crossing(self) -> bool:
        return self.dir_ij_ring == self.dir_ji_ring

    def directions(self) -> tuple[tuple[int, int], tuple[int, int]]:
        i, j = self.edge
        return (i, j), (j, i)

    def position(self, direction) -> tuple[int, float]:
        i, j = self.edge
        if tuple(direction) == (i, j):
            return self.dir_ij_ring, self.dir_ij_offset
        if tuple(direction) == (j, i):
            return self.dir_ji_ring, self.dir_ji_offset
        raise ValueError(f"{tuple(direction)} is not a direction of crossing {self.edge}")

    def other(self, direction) -> tuple[int, int]:
        a, b = direction
        return (b, a)


@dataclass(frozen=True)
class Tie:
    crossing: CrossingPoint
    length_slots: int
    entry_direction: tuple[int, int]


@dataclass(frozen=True)
class RobotPlacement:
    robot: int
    ring: int
    offset_slots: float
    index: int
    ring_length: int


def _round_slots(value: float, tol: float, error, what: str) -> int:
    k = round(value)
    if abs(value - k) > tol:
        raise error(f"{what} is {value:.9g} slots, not an integer within {tol:g}")
    return int(k)


def build_arcs(instance: Instance) -> list[DirectedArc]:
    """All directed arcs, grouped by circle and ordered along travel."""
    sched = instance.schedule
    if sched is None:
        raise ValueError("instance has no schedule")
    centers = instance.centers
    adj = instance.graph.adjacency()
    arcs = []
    for i in range(instance.n):
        g = sched.directions[i]
        if not adj[i]:
            arcs.append(DirectedArc(i, 0.0, 0.0, g, TWO_PI))
            continue
        links = sorted(
            (normalize_angle(math.atan2(centers[j].y - centers[i].y, centers[j].x - centers[i].x)), j)
            for j in adj[i]
        )
        if g < 0:
            links.reverse()
        m = len(links)
        for k in range(m):
            a, ja = links[k]
            b, jb = links[(k + 1) % m]
            length = TWO_PI if m == 1 else normalize_angle(g * (b - a))
            arcs.append(DirectedArc(i, a, b, g, length, ja, jb))
    return arcs


def decompose_rings(instance: Instance, slot_tol: float = SLOT_TOL) -> list[Ring]:
    arcs = build_arcs(instance)
    starts = {(a.circle, a.from_link): idx for idx, a in enumerate(arcs)}

    def successor(idx: int) -> int:
        a = arcs[idx]
        if a.to_link is None:
            return idx
        return starts[(a.to_link, a.circle)]

    seen = [False] * len(arcs)
    cycles = []
    for idx in range(len(arcs)):
        if seen[idx]:
            continue
        cyc = []
        cur = idx
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = successor(cur)
        origin = min(range(len(cyc)), key=lambda k: (arcs[cyc[k]].circle, arcs[cyc[k]].from_angle))
        cycles.append(cyc[origin:] + cyc[:origin])
    cycles.sort(key=lambda c: (arcs[c[0]].circle, arcs[c[0]].from_angle))

    rings = []
    for rid, cyc in enumerate(cycles):
        offsets = []
        total = 0.0
        for idx in cyc:
            offsets.append(total / TWO_PI)
            total += arcs[idx].length
        length = _round_slots(total / TWO_PI, slot_tol, NonIntegralRingLength, f"ring {rid} length")
        rings.append(Ring(rid, tuple(arcs[i] for i in cyc), tuple(offsets), length))
    return rings


def _arc_positions(rings) -> dict[tuple[int, int | None], tuple[int, float]]:
    pos = {}
    for r in rings:
        for arc, off in zip(r.arcs, r.offsets):
            pos[(arc.circle, arc.from_link)] = (r.id, off)
    return pos


def crossing_points(instance: Instance, rings: list[Ring]) -> list[CrossingPoint]:
    pos = _arc_positions(rings)
    out = []
    for cid, (i, j) in enumerate(instance.graph.sorted_edges()):
        r_ij, x_ij = pos[(j, i)]
        r_ji, x_ji = pos[(i, j)]
        out.append(CrossingPoint(cid, (i, j), r_ij, r_ji, x_ij, x_ji))
    return out


def compute_ties(
    instance: Instance, rings: list[Ring], slot_tol: float = SLOT_TOL
) -> tuple[list[Tie], dict[int, tuple[int, ...]]]:
    """Ties at every self-crossing, plus the sorted distinct lengths per ring."""
    ties = []
    for c in crossing_points(instance, rings):
        if not c.is_self_crossing:
            continue
        length = rings[c.dir_ij_ring].length_slots
        first = (c.dir_ji_offset - c.dir_ij_offset) % length
        a = _round_slots(first, slot_tol, NonIntegralTieLength, f"tie at crossing {c.edge}")
        i, j = c.edge
        ties.append(Tie(c, a, (i, j)))
        ties.append(Tie(c, length - a, (j, i)))
    distinct = {r.id: tuple(sorted({t.length_slots for t in ties if t.crossing.dir_ij_ring == r.id})) for r in rings}
    return ties, distinct


def place_robots(
    instance: Instance,
    rings: list[Ring],
    slot_tol: float = SLOT_TOL,
    angle_tol: float = ANGLE_TOL,
) -> list[RobotPlacement]:
    """Locate every robot on its ring at time 0.

    A robot sitting exactly on a link position is placed at the start of the
    outgoing arc of its own circle, i.e. just after the crossing.
    """
    sched = instance.schedule
    by_circle: dict[int, list[tuple[int, DirectedArc, float]]] = {}
    for r in rings:
        for arc, off in zip(r.arcs, r.offsets):
            by_circle.setdefault(arc.circle, []).append((r.id, arc, off))

    raw = []
    for i in range(instance.n):
        theta = sched.starts[i]
        g = sched.directions[i]
        best = None
        for rid, arc, off in by_circle[i]:
            delta = normalize_angle(g * (theta - arc.from_angle))
            if TWO_PI - delta <= angle_tol:
                delta = 0.0
            if best is None or delta < best[0]:
                best = (delta, rid, off)
        delta, rid, off = best
        length = rings[rid].length_slots
        offset = (off + delta / TWO_PI) % length
        if length - offset <= _SNAP:
            offset = 0.0
        raw.append((i, rid, offset))

    placements: dict[int, RobotPlacement] = {}
    for r in rings:
        members = sorted((off, i) for i, rid, off in raw if rid == r.id)
        if len(members) != r.length_slots:
            raise PlacementSpacingViolation(
                f"ring {r.id} of {r.length_slots} slots holds {len(members)} robots"
            )
        base = members[0][0]
        for k, (off, i) in enumerate(members):
            if abs((off - base) - k) > slot_tol:
                raise PlacementSpacingViolation(
                    f"robot {i} on ring {r.id} is {off - base:.9g} slots from robot {members[0][1]}"
                )
            placements[i] = RobotPlacement(i, r.id, off, k, r.length_slots)
    return [placements[i] for i in range(instance.n)]


def distance_to_crossing(placement: RobotPlacement, crossing: CrossingPoint, direction) -> float:
    """Slots from the robot forward along its ring to the crossing, in ``[0, l)``."""
    ring, offset = crossing.position(direction)
    if ring != placement.ring:
        raise DirectionNotOnRing(
            f"direction {tuple(direction)} of crossing {crossing.edge} lies on ring {ring}, "
            f"robot {placement.robot} is on ring {placement.ring}"
        )
    d = (offset - placement.offset_slots) % placement.ring_length
    if placement.ring_length - d <= _SNAP:
        d = 0.0
    return d


@dataclass(frozen=True)
class Decomposition:
    instance: Instance
    rings: tuple[Ring, ...]
    crossings: tuple[CrossingPoint, ...]
    ties: tuple[Tie, ...]
    tie_lengths: dict  # ring id -> sorted distinct tie lengths
    placements: tuple[RobotPlacement, ...]

    def ring_robots(self, ring_id: int) -> list[int]:
        """Robot ids on a ring, in ring index order."""
        members = [p for p in self.placements if p.ring == ring_id]
        return [p.robot for p in sorted(members, key=lambda p: p.index)]

    def tie_multiset(self, ring_id: int) -> list[int]:
        return sorted(t.length_slots for t in self.ties if t.crossing.dir_ij_ring == ring_id)


@lru_cache(maxsize=256)
def decompose(instance: Instance, slot_tol: float = SLOT_TOL) -> Decomposition:
    """Rings, crossings, ties and placements in one cached pass."""
    rings = decompose_rings(instance, slot_tol)
    ties, lengths = compute_ties(instance, rings, slot_tol)
    placements = place_robots(instance, rings, slot_tol)
    return Decomposition(
        instance,
        tuple(rings),
        tuple(crossing_points(instance, rings)),
        tuple(ties),
        lengths,
        tuple(placements),
    )


def crossings_between(dec: Decomposition, ring_a: int, ring_b: int):
    """Yield ``(crossing, direction on ring_a, direction on ring_b)``.

    For a self-crossing (``ring_a == ring_b``) both assignments are produced.
    """
    for c in dec.crossings:
        d1, d2 = c.directions()
        r1, r2 = c.dir_ij_ring, c.dir_ji_ring
        if r1 == ring_a and r2 == ring_b:
            yield c, d1, d2
        if r2 == ring_a and r1 == ring_b:
            yield c, d2, d1


__all__ = [
    "SLOT_TOL",
    "DirectedArc",
    "Ring",
    "CrossingPoint",
    "Tie",
    "RobotPlacement",
    "Decomposition",
    "build_arcs",
    "decompose_rings",
    "crossing_points",
    "compute_ties",
    "place_robots",
    "distance_to_crossing",
    "decompose",
    "crossings_between",
]
