"""Event-driven simulation of a partial system under the shifting protocol.

Time is measured in slots. Every live robot moves forward along its current
ring at unit speed. When it reaches a crossing direction, one of two things
happens. If a robot reaches the opposite direction of the same crossing at
the same instant, the two MET: each keeps its circle and so continues on the
other's ring. Otherwise the robot SHIFTED to the neighboring circle and
stays on its ring.
"""

from __future__ import annotations

import heapq
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import EventCapExceeded, HorizonOverflow, InsufficientHorizon, ValidationError
from .geometry import Instance
from .rings import decompose

log = logging.getLogger(__name__)

AUTO = "auto"
HORIZON_CAP = 10**6
DEFAULT_EVENT_CAP = 5 * 10**6
TIME_TOL = 1e-6

MET = "MET"
SHIFTED = "SHIFTED"


@dataclass(frozen=True)
class SimConfig:
    removed: frozenset = frozenset()
    horizon_slots: int | str = AUTO
    event_cap: int = DEFAULT_EVENT_CAP
    tol: float = TIME_TOL


@dataclass(frozen=True)
class SimEvent:
    time: float
    crossing: tuple[int, int]
    arrivals: tuple[int, ...]
    outcome: str


@dataclass
class SimReport:
    horizon: float
    period: int  # lcm of ring lengths
    removed: frozenset
    events: list[SimEvent] = field(default_factory=list)
    meetings_per_robot: dict = field(default_factory=dict)
    starving: frozenset = frozenset()
    occupancy: list = field(default_factory=list)  # (time, per-ring live counts)
    diagnostics: list = field(default_factory=list)

    def live(self) -> list[int]:
        return sorted(self.meetings_per_robot)


def ring_period(instance: Instance) -> int:
    return math.lcm(*(r.length_slots for r in decompose(instance).rings))


def simulate(instance: Instance, config: SimConfig | None = None) -> SimReport:
    config = config or SimConfig()
    dec = decompose(instance)
    n = instance.n
    removed = frozenset(int(x) for x in config.removed)
    if not removed < frozenset(range(n)):
        raise ValidationError("removed must be a strict subset of the robots")

    period = math.lcm(*(r.length_slots for r in dec.rings))
    if config.horizon_slots == AUTO:
        if period > HORIZON_CAP:
            raise HorizonOverflow(f"lcm of ring lengths is {period}, above the cap {HORIZON_CAP}")
        horizon = float(period)
    else:
        horizon = float(config.horizon_slots)
        if horizon < 1:
            raise ValidationError("horizon must be at least one slot")
    tol = config.tol

    # crossing directions on each ring, sorted by offset: (offset, crossing id, side)
    stops: dict[int, list[tuple[float, int, int]]] = {r.id: [] for r in dec.rings}
    for c in dec.crossings:
        stops[c.dir_ij_ring].append((c.dir_ij_offset, c.id, 0))
        stops[c.dir_ji_ring].append((c.dir_ji_offset, c.id, 1))
    for s in stops.values():
        s.sort()
    lengths = {r.id: r.length_slots for r in dec.rings}

    def next_stop(ring: int, offset: float, now: float):
        """First crossing strictly ahead of ``offset`` (a stop at distance 0 was just passed)."""
        best = None
        for off, cid, side in stops[ring]:
            delta = (off - offset) % lengths[ring]
            if delta <= tol or lengths[ring] - delta <= tol:
                delta = float(lengths[ring])
            if best is None or delta < best[0]:
                best = (delta, cid, side)
        if best is None:
            return None
        return now + best[0], best[1], best[2]

    ring_of = {}
    heap = []
    live = [p.robot for p in dec.placements if p.robot not in removed]
    for p in dec.placements:
        if p.robot in removed:
            continue
        ring_of[p.robot] = p.ring
        nxt = next_stop(p.ring, p.offset_slots, 0.0)
        if nxt is not None:
            heapq.heappush(heap, (nxt[0], nxt[1], nxt[2], p.robot))

    report = SimReport(horizon, period, removed, meetings_per_robot={u: 0 for u in live})
    last_met: dict[int, float] = {}

    def occupancy():
        counts = [0] * len(dec.rings)
        for u in live:
            counts[ring_of[u]] += 1
        return tuple(counts)

    report.occupancy.append((0.0, occupancy()))
    while heap and heap[0][0] <= horizon + tol:
        t0 = heap[0][0]
        batch = []
        while heap and heap[0][0] <= t0 + tol:
            batch.append(heapq.heappop(heap))
        groups: dict[int, list] = {}
        for item in batch:
            groups.setdefault(item[1], []).append(item)
        for cid in sorted(groups):
            c = dec.crossings[cid]
            items = sorted(groups[cid], key=lambda it: it[2])
            sides = [it[2] for it in items]
            if len(items) > 2 or len(set(sides)) != len(sides):
                raise RuntimeError(f"inconsistent arrivals at crossing {c.edge}: {items}")
            if len(items) == 2:
                (ta, _, _, a), (tb, _, _, b) = items
                # a came through (i, j) and takes over ring of (j, i); b the reverse
                ring_of[a], ring_of[b] = c.dir_ji_ring, c.dir_ij_ring
                for robot, t, off in ((a, ta, c.dir_ji_offset), (b, tb, c.dir_ij_offset)):
                    report.meetings_per_robot[robot] += 1
                    last_met[robot] = t
                    nxt = next_stop(ring_of[robot], off, t)
                    heapq.heappush(heap, (nxt[0], nxt[1], nxt[2], robot))
                report.events.append(SimEvent(ta, c.edge, (a, b), MET))
            else:
                t, _, side, a = items[0]
                off = c.dir_ij_offset if side == 0 else c.dir_ji_offset
                nxt = next_stop(ring_of[a], off, t)
                heapq.heappush(heap, (nxt[0], nxt[1], nxt[2], a))
                report.events.append(SimEvent(t, c.edge, (a,), SHIFTED))
            if len(report.events) > config.event_cap:
                raise EventCapExceeded(f"more than {config.event_cap} events before the horizon")
        report.occupancy.append((t0, occupancy()))

    report.starving = frozenset(u for u in live if report.meetings_per_robot[u] == 0)
    if horizon >= 2 * period - tol:
        for u in live:
            if u in last_met and last_met[u] < horizon - period - tol:
                msg = f"robot {u} stopped meeting after t={last_met[u]:.6g}"
                log.warning(msg)
                report.diagnostics.append(msg)
    return report


def detect_starving(report: SimReport) -> set[int]:
    """Robots with no meeting during a full common period of the rings."""
    if report.horizon < report.period - TIME_TOL:
        raise InsufficientHorizon(
            f"horizon {report.horizon:g} is shorter than the ring period {report.period}"
        )
    return {u for u, k in report.meetings_per_robot.items() if k == 0}


def occupancy_invariant_check(report: SimReport) -> bool:
    if not report.occupancy:
        return True
    first = report.occupancy[0][1]
    return all(counts == first for _, counts in report.occupancy)


def events_to_jsonl(events: Iterable[SimEvent]) -> str:
    lines = []
    for e in events:
        lines.append(
            json.dumps(
                {
                    "time": float(f"{e.time:.12g}"),
                    "crossing": list(e.crossing),
                    "robots": list(e.arrivals),
                    "outcome": e.outcome,
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")
