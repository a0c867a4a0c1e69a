"""Circulant graphs and the caterpillar construction used for hardness.

A circulant graph ``C_n S`` has nodes ``0..n-1`` with ``i`` adjacent to
``i +- d (mod n)`` for every jump ``d`` in ``S``. Its K_{n,n}-augmentation
is a circulant graph on ``2n`` nodes with the same maximum independent set
size, whose jump set contains every odd number up to ``n``. That augmented
graph is realized as the meeting graph of a caterpillar-shaped system: the
tie lengths of the system are exactly the augmented jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidParams, LayoutCollision, ParseError, ReductionMismatch
from .geometry import Instance, Point, make_instance, potential_links
from .meeting import MeetingGraph, build_meeting_graph
from .resilience import IndependentSet, max_independent_set, starvation_number
from .rings import decompose

DEFAULT_EPSILON = 0.3
DEFAULT_SPACING = 2.15
DEFAULT_LEAF_HEIGHT = 2.0


@dataclass(frozen=True)
class CirculantGraph:
    n: int
    jumps: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams(f"circulant graph needs n >= 1, got {self.n}")
        for d in self.jumps:
            if not (1 <= d <= self.n // 2):
                raise InvalidParams(f"jump {d} outside 1..{self.n // 2} for n = {self.n}")

    @classmethod
    def of(cls, n: int, jumps: Iterable[int] = ()) -> "CirculantGraph":
        return cls(int(n), frozenset(int(d) for d in jumps))

    @classmethod
    def parse(cls, text: str) -> "CirculantGraph":
        """Parse the compact form ``"n;d1,d2,..."`` (``"6;"`` has no jumps)."""
        head, sep, tail = text.strip().partition(";")
        if not sep:
            raise ParseError(f"circulant graph {text!r} must look like 'n;d1,d2,...'")
        try:
            n = int(head)
            jumps = [int(x) for x in tail.split(",") if x.strip()]
        except ValueError:
            raise ParseError(f"circulant graph {text!r} has a non-integer field") from None
        return cls.of(n, jumps)

    def sorted_jumps(self) -> list[int]:
        return sorted(self.jumps)

    def __str__(self) -> str:
        return f"{self.n};{','.join(map(str, self.sorted_jumps()))}"

    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for i in range(self.n):
            for d in self.jumps:
                j = (i + d) % self.n
                if i != j:
                    out.add((min(i, j), max(i, j)))
        return sorted(out)

    def to_graph(self) -> MeetingGraph:
        return MeetingGraph.from_edges(self.n, self.edges())


def knn_augmentation(g: CirculantGraph) -> CirculantGraph:
    """``C_n S`` to ``C_2n {2d : d in S} + {1, 3, 5, ...}`` (odd numbers up to n)."""
    if g.n < 2:
        raise InvalidParams("augmentation needs n >= 2")
    jumps = {2 * d for d in g.jumps} | {2 * i - 1 for i in range(1, (g.n + 1) // 2 + 1)}
    return CirculantGraph.of(2 * g.n, jumps)


def circulant_mis(g: CirculantGraph, budget: int | None = None) -> IndependentSet:
    return max_independent_set(g.to_graph(), budget)


@dataclass(frozen=True)
class CaterpillarLayout:
    centers: tuple[Point, ...]
    lines: tuple[int, ...]  # 0 for spine, +1 / -1 for the leaf lines
    edges: tuple[tuple[int, int], ...]
    spacing: float
    leaf_height: float
    epsilon: float
    case: str


def caterpillar_layout(
    augmented: CirculantGraph,
    spacing: float = DEFAULT_SPACING,
    leaf_height: float = DEFAULT_LEAF_HEIGHT,
    epsilon: float = DEFAULT_EPSILON,
) -> CaterpillarLayout:
    """Place the ``2n`` circles of the caterpillar.

    Circles ``C_0..C_n`` go left to right: a jump index continues the spine,
    any other index becomes a leaf hanging off the last spine circle,
    alternating between the upper and lower leaf line. The remaining
    ``n - 1`` circles are a mirror image of a prefix, chosen so that the
    two halves join into a single caterpillar.
    """
    N = augmented.n
    if N % 2 or N < 4:
        raise InvalidParams(f"expected an augmented circulant graph on 2n >= 4 nodes, got {N}")
    n = N // 2
    S = augmented.jumps
    missing = [d for d in range(1, n + 1, 2) if d not in S]
    if missing:
        raise InvalidParams(f"jump set lacks odd numbers {missing}; not an augmentation")
    if leaf_height >= spacing:
        raise InvalidParams("leaf height must be below the spacing")
    dx = math.sqrt(spacing**2 - leaf_height**2)

    xs, ys, lines = [0.0], [0.0], [0]
    edges = []
    last_spine, last_leaf_line = 0, -1
    for i in range(1, n + 1):
        xj = xs[last_spine]
        if i in S:
            xs.append(xj + spacing)
            ys.append(0.0)
            lines.append(0)
            edges.append((last_spine, i))
            last_spine = i
        else:
            line = -last_leaf_line
            last_leaf_line = line
            xs.append(xj + dx)
            ys.append(line * leaf_height)
            lines.append(line)
            edges.append((last_spine, i))

    # which prefix is mirrored, how, and where the mirror of a shared circle lands
    if (n % 2 == 0 and n in S) or (n % 2 == 1 and (n - 1) in S):
        case = "a"
        source = list(range(n - 1))
        axis = (xs[n - 1] + xs[n]) / 2
        alias = {n - 1: n}
        mirror = lambda x, y: (2 * axis - x, y)
    elif n % 2 == 0:
        case = "b"
        source = list(range(n - 1))
        axis = xs[n - 1]
        alias = {n - 1: n - 1}
        mirror = lambda x, y: (2 * axis - x, y)
    else:
        case = "c"
        source = list(range(n - 2)) + [n - 1]
        cx = (xs[n - 2] + xs[n]) / 2
        alias = {n - 2: n, n: n - 2}
        mirror = lambda x, y: (2 * cx - x, -y)

    ids = dict(alias)
    for k, orig in enumerate(sorted(source, reverse=True)):
        ids[orig] = n + 1 + k
    for orig in sorted(source, reverse=True):
        x, y = mirror(xs[orig], ys[orig])
        xs.append(x)
        ys.append(y)
        lines.append(0 if y == 0 else (1 if y > 0 else -1))
    base_edges = list(edges)
    for a, b in base_edges:
        if a in ids and b in ids:
            e = (min(ids[a], ids[b]), max(ids[a], ids[b]))
            if e not in edges:
                edges.append(e)

    centers = tuple(Point(round(x, 12) + 0.0, round(y, 12) + 0.0) for x, y in zip(xs, ys))
    edges = tuple(sorted((min(e), max(e)) for e in edges))
    if len(centers) != N or len(edges) != N - 1:
        raise LayoutCollision(f"layout produced {len(centers)} circles and {len(edges)} links for 2n = {N}")
    try:
        found = potential_links(centers, epsilon)
    except Exception as exc:
        raise LayoutCollision(f"caterpillar layout for {augmented}: {exc}") from exc
    if found != set(edges):
        extra = sorted(found - set(edges))
        lost = sorted(set(edges) - found)
        raise LayoutCollision(f"caterpillar layout for {augmented}: unexpected links {extra}, missing {lost}")
    return CaterpillarLayout(centers, tuple(lines), edges, spacing, leaf_height, epsilon, case)


def build_caterpillar_scs(
    augmented: CirculantGraph,
    spacing: float = DEFAULT_SPACING,
    leaf_height: float = DEFAULT_LEAF_HEIGHT,
    epsilon: float = DEFAULT_EPSILON,
) -> Instance:
    layout = caterpillar_layout(augmented, spacing, leaf_height, epsilon)
    return make_instance(layout.centers, layout.epsilon, layout.edges)


def folded_tie_set(instance: Instance) -> set[int]:
    """Distinct tie lengths of a single-ring system, each folded to ``min(l, N - l)``."""
    dec = decompose(instance)
    out = set()
    for r in dec.rings:
        out |= {min(l, r.length_slots - l) for l in dec.tie_lengths[r.id]}
    return out


@dataclass(frozen=True)
class ReductionReport:
    original: CirculantGraph
    augmented: CirculantGraph
    tie_set: tuple[int, ...]
    starvation_number: int
    mis: int
    mis_witness: tuple[int, ...]
    starvation_witness: tuple[int, ...]


def verify_reduction(original: CirculantGraph, scs: Instance, budget: int | None = None) -> ReductionReport:
    """Check that ``scs`` realizes the augmentation of ``original``.

    The folded tie set must equal the augmented jump set, and the starvation
    number of the system must equal the MIS size of the original graph.
    """
    augmented = knn_augmentation(original)
    ties = folded_tie_set(scs)
    if ties != set(augmented.jumps):
        raise ReductionMismatch(
            f"tie set {sorted(ties)} differs from augmented jumps {augmented.sorted_jumps()}",
            expected=augmented.sorted_jumps(),
            actual=sorted(ties),
        )
    starve = starvation_number(build_meeting_graph(scs), budget)
    mis = circulant_mis(original, budget)
    if starve.size != mis.size:
        raise ReductionMismatch(
            f"starvation number {starve.size} differs from MIS {mis.size} of {original}",
            expected=mis.size,
            actual=starve.size,
        )
    return ReductionReport(
        original, augmented, tuple(sorted(ties)), starve.size, mis.size, mis.members, starve.members
    )


def circulant_from_ring(length: int, ties: Iterable[int]) -> CirculantGraph:
    """Circulant graph of a ring's same-ring adjacency: jumps are the folded tie lengths."""
    jumps = set()
    for l in ties:
        l = int(l) % length
        if l:
            jumps.add(min(l, length - l))
    return CirculantGraph.of(length, jumps)
