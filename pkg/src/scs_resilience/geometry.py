"""Trajectory sets, communication graphs and synchronized schedules.

All trajectories are unit circles. Angles are radians measured from the
positive x axis and normalized to ``[0, 2*pi)``. A schedule assigns each
circle a start angle ``f`` and a direction ``g`` (+1 counter-clockwise,
-1 clockwise); at time ``t`` (one lap per time unit) the robot of circle
``i`` is at angle ``f[i] + 2*pi*g[i]*t``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DisconnectedGraph,
    EdgeOutOfRange,
    NotBipartite,
    NotSynchronizable,
    OverlappingCircles,
    UnknownEdge,
    ValidationError,
)

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9
CCW, CW = 1, -1


def normalize_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    # fmod of a tiny negative number can land exactly on 2*pi after the shift
    return 0.0 if theta >= TWO_PI else theta


def angle_gap(a: float, b: float) -> float:
    """Smallest absolute difference between two angles modulo 2*pi."""
    d = normalize_angle(a - b)
    return min(d, TWO_PI - d)


def edge_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError(f"non-finite coordinate ({self.x}, {self.y})")

    def distance(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Trajectory:
    id: int
    center: Point
    radius: float = 1.0


@dataclass(frozen=True)
class CommunicationGraph:
    n: int
    edges: frozenset  # of sorted (i, j) tuples

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "CommunicationGraph":
        keys = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValidationError(f"self-loop on node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"edge {(i, j)} references a node outside 0..{n - 1}")
            keys.add(edge_key(i, j))
        return cls(n, frozenset(keys))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, i: int) -> list[int]:
        return self.adjacency()[i]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        adj = self.adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()


@dataclass(frozen=True)
class Link:
    edge: tuple[int, int]
    phi_ij: float
    phi_ji: float


@dataclass(frozen=True)
class Schedule:
    starts: tuple[float, ...]
    directions: tuple[int, ...]

    def f(self, i: int) -> float:
        return self.starts[i]

    def g(self, i: int) -> int:
        return self.directions[i]


@dataclass(frozen=True)
class Instance:
    epsilon: float
    trajectories: tuple[Trajectory, ...]
    graph: CommunicationGraph
    schedule: Schedule | None = None

    @property
    def n(self) -> int:
        return len(self.trajectories)

    @property
    def centers(self) -> list[Point]:
        return [t.center for t in self.trajectories]

    def with_schedule(self, schedule: Schedule) -> "Instance":
        return Instance(self.epsilon, self.trajectories, self.graph, schedule)


def potential_links(centers: Sequence[Point], epsilon: float) -> set[tuple[int, int]]:
    """Pairs of circles whose centers are at most ``2 + epsilon`` apart.

    Raises OverlappingCircles when two circles intersect or touch.
    """
    out = set()
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            d = centers[i].distance(centers[j])
            if d <= 2.0:
                raise OverlappingCircles(i, j, d)
            if d <= 2.0 + epsilon:
                out.add((i, j))
    return out


def link_angles(instance: Instance, edge: Sequence[int]) -> Link:
    i, j = int(edge[0]), int(edge[1])
    if edge_key(i, j) not in instance.graph.edges:
        raise UnknownEdge(f"edge {(i, j)} is not in the communication graph")
    ci, cj = instance.trajectories[i].center, instance.trajectories[j].center
    phi_ij = normalize_angle(math.atan2(cj.y - ci.y, cj.x - ci.x))
    phi_ji = normalize_angle(math.atan2(ci.y - cj.y, ci.x - cj.x))
    return Link((i, j), phi_ij, phi_ji)


def _link_angle(centers: Sequence[Point], i: int, j: int) -> float:
    return normalize_angle(math.atan2(centers[j].y - centers[i].y, centers[j].x - centers[i].x))


def two_color_directions(graph: CommunicationGraph) -> dict[int, int]:
    """Alternate CCW/CW along every edge, node 0 counter-clockwise."""
    if not graph.is_connected():
        raise DisconnectedGraph("communication graph is not connected")
    adj = graph.adjacency()
    color = {0: CCW}
    parent = {0: None}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in color:
                color[v] = -color[u]
                parent[v] = u
                queue.append(v)
            elif color[v] == color[u]:
                raise NotBipartite(_odd_cycle(parent, u, v))
    return dict(sorted(color.items()))


def _odd_cycle(parent, u, v):
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pv = chain(u), chain(v)
    common = set(pu) & set(pv)
    lca = next(x for x in pu if x in common)
    left = pu[: pu.index(lca) + 1]
    right = pv[: pv.index(lca)]
    return left + right[::-1]


def _sync_residual(centers, starts, directions, i, j) -> float:
    phi_ij = _link_angle(centers, i, j)
    phi_ji = _link_angle(centers, j, i)
    a = directions[i] * (phi_ij - starts[i])
    b = directions[j] * (phi_ji - starts[j])
    return angle_gap(a, b)


def is_synchronized(instance: Instance, edge: Sequence[int], tol: float = ANGLE_TOL) -> bool:
    """Both robots of ``edge`` reach their link positions at the same times."""
    i, j = int(edge[0]), int(edge[1])
    if i == j:
        raise ValidationError("an edge needs two distinct endpoints")
    if instance.schedule is None:
        raise ValidationError("instance has no schedule")
    s = instance.schedule
    return _sync_residual(instance.centers, s.starts, s.directions, i, j) <= tol


def synthesize_schedule(
    instance: Instance,
    directions: Mapping[int, int] | None = None,
    tol: float = ANGLE_TOL,
) -> Schedule:
    """Spanning-tree propagation of start angles from ``f[0] = 0``.

    Every non-tree edge is checked afterwards; the first failing one is
    reported through NotSynchronizable.
    """
    graph = instance.graph
    if directions is None:
        directions = two_color_directions(graph)
    g = [int(directions[i]) for i in range(graph.n)]
    for i, j in graph.sorted_edges():
        if g[i] != -g[j]:
            raise ValidationError(f"directions on edge {(i, j)} are not opposite")
    centers = instance.centers
    adj = graph.adjacency()
    f: list[float | None] = [None] * graph.n
    f[0] = 0.0
    tree_edges = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if f[j] is None:
                phi_ij = _link_angle(centers, i, j)
                phi_ji = _link_angle(centers, j, i)
                f[j] = normalize_angle(phi_ji - g[j] * g[i] * (phi_ij - f[i]))
                tree_edges.add(edge_key(i, j))
                queue.append(j)
    if any(x is None for x in f):
        raise DisconnectedGraph("communication graph is not connected")
    for i, j in graph.sorted_edges():
        if (i, j) in tree_edges:
            continue
        if _sync_residual(centers, f, g, i, j) > tol:
            raise NotSynchronizable((i, j))
    return Schedule(tuple(f), tuple(g))


def make_instance(
    centers: Sequence[Point | Sequence[float]],
    epsilon: float,
    edges: Iterable[Sequence[int]] | None = None,
    directions: Mapping[int, int] | None = None,
    starts: Mapping[int, float] | None = None,
    angle_tol: float = ANGLE_TOL,
) -> Instance:
    """Build a fully validated instance, filling in defaults.

    Missing edges default to every potential link, missing directions to the
    canonical two-coloring and missing starts to the synthesized schedule.
    """
    if not (0.0 < epsilon < 0.5):
        raise ValidationError(f"epsilon must lie in (0, 0.5), got {epsilon}")
    pts = [c if isinstance(c, Point) else Point(float(c[0]), float(c[1])) for c in centers]
    n = len(pts)
    if n == 0:
        raise ValidationError("an instance needs at least one circle")
    links = potential_links(pts, epsilon)
    if edges is None:
        graph = CommunicationGraph(n, frozenset(links))
    else:
        graph = CommunicationGraph.from_edges(n, edges)
        for e in graph.sorted_edges():
            if e not in links:
                d = pts[e[0]].distance(pts[e[1]])
                raise EdgeOutOfRange(f"edge {e} joins circles {d:.6g} apart, beyond 2 + epsilon")
    if not graph.is_connected():
        raise DisconnectedGraph("communication graph is not connected")
    trajectories = tuple(Trajectory(i, p) for i, p in enumerate(pts))
    inst = Instance(float(epsilon), trajectories, graph, None)

    if directions is None:
        g = two_color_directions(graph)
    else:
        g = {int(k): int(v) for k, v in directions.items()}
        if sorted(g) != list(range(n)) or any(v not in (CCW, CW) for v in g.values()):
            raise ValidationError("directions must map every circle id to +1 or -1")
        two_color_directions(graph)  # bipartiteness
    if starts is None:
        return inst.with_schedule(synthesize_schedule(inst, g, tol=angle_tol))

    f = {int(k): float(v) for k, v in starts.items()}
    if sorted(f) != list(range(n)):
        raise ValidationError("starts must map every circle id to an angle")
    sched = Schedule(tuple(normalize_angle(f[i]) for i in range(n)), tuple(g[i] for i in range(n)))
    for i, j in graph.sorted_edges():
        if g[i] != -g[j]:
            raise ValidationError(f"directions on edge {(i, j)} are not opposite")
    inst = inst.with_schedule(sched)
    for e in graph.sorted_edges():
        if not is_synchronized(inst, e, angle_tol):
            raise NotSynchronizable(e)
    return inst
