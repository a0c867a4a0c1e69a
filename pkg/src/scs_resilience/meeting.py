"""Meeting graph: which robots keep each other from starving.

Two robots on the same ring are adjacent when their index distance along
the ring equals a tie length of that ring. Two robots on different rings
sharing a crossing point are adjacent when the gcd of the ring lengths
divides the (integral) difference of their distances to the crossing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NonIntegralOffset
from .geometry import Instance, edge_key
from .rings import SLOT_TOL, Decomposition, crossings_between, decompose, distance_to_crossing

MEET_TOL = 1e-6


@dataclass(frozen=True)
class PreventionCertificate:
    kind: str  # "same-ring" or "cross-ring"
    tie_length: int | None = None
    crossing: tuple[int, int] | None = None
    s: int | None = None
    g: int | None = None


@dataclass(frozen=True)
class MeetingGraph:
    n: int
    adjacency: tuple[frozenset, ...]
    certificates: dict  # sorted robot pair -> tuple of certificates

    def neighbors(self, u: int) -> frozenset:
        return self.adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def min_degree(self) -> int:
        return min(len(a) for a in self.adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "MeetingGraph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("meeting graph cannot have self-loops")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj), {})


def same_ring_edges(
    ring_length: int, tie_lengths: Iterable[int], robots: Sequence[int] | None = None
) -> dict[tuple[int, int], list[PreventionCertificate]]:
    """Robot at ring index i is adjacent to index (i + l) mod ring_length for each tie length l."""
    if robots is None:
        robots = range(ring_length)
    out: dict[tuple[int, int], list[PreventionCertificate]] = {}
    for l in sorted(set(tie_lengths)):
        for i in range(ring_length):
            j = (i + l) % ring_length
            if i == j:
                continue
            key = edge_key(robots[i], robots[j])
            cert = PreventionCertificate("same-ring", tie_length=l)
            if cert not in out.setdefault(key, []):
                out[key].append(cert)
    return out


def cross_ring_adjacent(length_a: int, length_b: int, s: int) -> bool:
    return s % math.gcd(length_a, length_b) == 0


def cross_ring_edges(dec: Decomposition, slot_tol: float = SLOT_TOL) -> dict:
    out: dict[tuple[int, int], list[PreventionCertificate]] = {}
    by_ring: dict[int, list] = {}
    for p in dec.placements:
        by_ring.setdefault(p.ring, []).append(p)
    for c in dec.crossings:
        if c.is_self_crossing:
            continue
        d_ab, d_ba = c.directions()
        ra, rb = c.dir_ij_ring, c.dir_ji_ring
        la, lb = dec.rings[ra].length_slots, dec.rings[rb].length_slots
        g = math.gcd(la, lb)
        for pu in by_ring[ra]:
            du = distance_to_crossing(pu, c, d_ab)
            for pv in by_ring[rb]:
                dv = distance_to_crossing(pv, c, d_ba)
                diff = du - dv
                s = round(diff)
                if abs(diff - s) > slot_tol:
                    raise NonIntegralOffset(
                        f"robots {pu.robot} and {pv.robot} at crossing {c.edge}: d - d' = {diff:.9g}"
                    )
                if s % g == 0:
                    key = edge_key(pu.robot, pv.robot)
                    out.setdefault(key, []).append(PreventionCertificate("cross-ring", crossing=c.edge, s=s, g=g))
    return out


@lru_cache(maxsize=256)
def build_meeting_graph(instance: Instance, slot_tol: float = SLOT_TOL) -> MeetingGraph:
    dec = decompose(instance, slot_tol)
    certs: dict[tuple[int, int], list[PreventionCertificate]] = {}
    for r in dec.rings:
        part = same_ring_edges(r.length_slots, dec.tie_lengths[r.id], dec.ring_robots(r.id))
        for k, v in part.items():
            certs.setdefault(k, []).extend(v)
    for k, v in cross_ring_edges(dec, slot_tol).items():
        certs.setdefault(k, []).extend(v)
    adj = [set() for _ in range(instance.n)]
    for u, v in certs:
        adj[u].add(v)
        adj[v].add(u)
    return MeetingGraph(
        instance.n,
        tuple(frozenset(a) for a in adj),
        {k: tuple(v) for k, v in sorted(certs.items())},
    )


def prevention_test(instance: Instance, u: int, v: int) -> tuple[bool, tuple[PreventionCertificate, ...]]:
    if u == v:
        raise ValueError("prevention test needs two distinct robots")
    graph = build_meeting_graph(instance)
    certs = graph.certificates.get(edge_key(u, v), ())
    return bool(certs), certs


def brute_force_meet(instance: Instance, u: int, v: int, tol: float = MEET_TOL) -> bool:
    """Enumerate arrival times at shared crossings and look for a coincidence.

    Robot ``u`` reaches a crossing direction at ``a_u + i*l_u``; ``v`` reaches
    the opposite direction at ``a_v + j*l_v``. Searching ``i <= l_v`` and
    ``j <= l_u`` covers one full common period.
    """
    if u == v:
        raise ValueError("need two distinct robots")
    dec = decompose(instance)
    pu, pv = dec.placements[u], dec.placements[v]
    lu, lv = pu.ring_length, pv.ring_length
    for c, dir_u, dir_v in crossings_between(dec, pu.ring, pv.ring):
        au = distance_to_crossing(pu, c, dir_u)
        av = distance_to_crossing(pv, c, dir_v)
        for i in range(lv + 1):
            for j in range(lu + 1):
                if abs(au + i * lu - (av + j * lv)) <= tol:
                    return True
    return False


def count_starving(source: Instance | MeetingGraph, removed: Iterable[int]) -> set[int]:
    """Live robots whose every meeting-graph neighbor has been removed."""
    graph = source if isinstance(source, MeetingGraph) else build_meeting_graph(source)
    removed = set(removed)
    return {u for u in range(graph.n) if u not in removed and graph.adjacency[u] <= removed}
