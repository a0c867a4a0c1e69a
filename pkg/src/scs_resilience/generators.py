"""Deterministic and random instance generators.

Every generator returns a validated Instance. Default range ``epsilon`` is
0.3 and neighboring circles sit 2.15 apart, so they are disjoint yet in
communication range.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from .errors import InvalidParams
from .geometry import Instance, Point, make_instance
from .reduction import DEFAULT_EPSILON, DEFAULT_SPACING, CirculantGraph, build_caterpillar_scs, knn_augmentation


def _pt(x: float, y: float) -> Point:
    # round away float noise so that documents are stable; 0.0 avoids "-0"
    return Point(round(x, 12) + 0.0, round(y, 12) + 0.0)


def path(n: int, spacing: float = DEFAULT_SPACING, epsilon: float = DEFAULT_EPSILON) -> Instance:
    if n < 1:
        raise InvalidParams("path needs n >= 1")
    return make_instance([_pt(k * spacing, 0.0) for k in range(n)], epsilon)


def cycle(n: int, spacing: float = DEFAULT_SPACING, epsilon: float = DEFAULT_EPSILON) -> Instance:
    """Regular polygon with ``n`` (even) circles, one per corner."""
    if n < 4 or n % 2:
        raise InvalidParams(f"cycle needs an even n >= 4, got {n}")
    pts = [_pt(0.0, 0.0)]
    x = y = 0.0
    for k in range(n - 1):
        x += spacing * math.cos(2 * math.pi * k / n)
        y += spacing * math.sin(2 * math.pi * k / n)
        pts.append(_pt(x, y))
    return make_instance(pts, epsilon)


def grid_tree(a: int, spacing: float = DEFAULT_SPACING, epsilon: float = DEFAULT_EPSILON) -> Instance:
    """``a`` vertical paths of ``a`` circles, their top circles joined into a path.

    Circles sit on a square grid, so neighboring teeth are in range of each
    other; the tree is given by explicit edges.
    """
    if a < 1:
        raise InvalidParams("grid-tree needs a >= 1")
    pts, edges = [], []
    for col in range(a):
        for row in range(a):
            idx = col * a + row
            pts.append(_pt(col * spacing, -row * spacing))
            if row:
                edges.append((idx - 1, idx))
        if col:
            edges.append(((col - 1) * a, col * a))
    return make_instance(pts, epsilon, edges)


def caterpillar(circulant: str | CirculantGraph) -> Instance:
    """Caterpillar system realizing the augmentation of a circulant graph ``"n;S"``."""
    g = circulant if isinstance(circulant, CirculantGraph) else CirculantGraph.parse(circulant)
    return build_caterpillar_scs(knn_augmentation(g))


def random_tree(
    n: int,
    rng: random.Random,
    epsilon: float = DEFAULT_EPSILON,
    max_tries: int = 2000,
) -> Instance:
    """Grow a tree by attaching circles at random angles and distances.

    A candidate is rejected when it would overlap an existing circle or fall
    in range of any circle other than its parent, so the potential-link graph
    is exactly the tree.
    """
    if n < 1:
        raise InvalidParams("random tree needs n >= 1")
    lo, hi = 2.02, 2.0 + epsilon - 0.02
    pts = [Point(0.0, 0.0)]
    edges = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise InvalidParams(f"could not grow a random tree of {n} circles")
        parent = rng.randrange(len(pts))
        theta = rng.uniform(0.0, 2 * math.pi)
        d = rng.uniform(lo, hi)
        c = _pt(pts[parent].x + d * math.cos(theta), pts[parent].y + d * math.sin(theta))
        if any(k != parent and c.distance(p) <= 2.0 + epsilon + 0.02 for k, p in enumerate(pts)):
            continue
        edges.append((parent, len(pts)))
        pts.append(c)
    return make_instance(pts, epsilon, edges)


def _square_patch(n: int, spacing: float) -> tuple[Callable, Callable]:
    def position(cell):
        return cell[0] * spacing, cell[1] * spacing

    def neighbors(cell):
        x, y = cell
        return [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]

    return position, neighbors


def _honeycomb_patch(n: int, spacing: float) -> tuple[Callable, Callable]:
    # cells are (i, j, s): lattice point i*a1 + j*a2 plus sublattice s
    a1 = (math.sqrt(3) * spacing, 0.0)
    a2 = (math.sqrt(3) * spacing / 2, 1.5 * spacing)

    def position(cell):
        i, j, s = cell
        return i * a1[0] + j * a2[0], i * a1[1] + j * a2[1] + s * spacing

    def neighbors(cell):
        i, j, s = cell
        if s == 0:
            return [(i, j, 1), (i, j - 1, 1), (i + 1, j - 1, 1)]
        return [(i, j, 0), (i, j + 1, 0), (i - 1, j + 1, 0)]

    return position, neighbors


def random_lattice(
    n: int,
    rng: random.Random,
    kind: str = "square",
    drop: float = 0.0,
    spacing: float = DEFAULT_SPACING,
    epsilon: float = DEFAULT_EPSILON,
) -> Instance:
    """Random connected patch of ``n`` cells of a square or honeycomb lattice.

    All lattice links are kept, then each non-bridge link is removed with
    probability ``drop`` (keeping the graph connected).
    """
    if n < 1:
        raise InvalidParams("random lattice needs n >= 1")
    if kind == "square":
        position, neighbors = _square_patch(n, spacing)
        start = (0, 0)
    elif kind == "honeycomb":
        position, neighbors = _honeycomb_patch(n, spacing)
        start = (0, 0, 0)
    else:
        raise InvalidParams(f"unknown lattice kind {kind!r}")
    cells = [start]
    member = {start}
    frontier = list(neighbors(start))
    while len(cells) < n:
        cand = frontier.pop(rng.randrange(len(frontier)))
        if cand in member:
            continue
        member.add(cand)
        cells.append(cand)
        frontier.extend(c for c in neighbors(cand) if c not in member)
    index = {c: k for k, c in enumerate(cells)}
    edges = sorted(
        {(min(index[c], index[d]), max(index[c], index[d])) for c in cells for d in neighbors(c) if d in index}
    )
    if drop > 0:
        order = list(edges)
        rng.shuffle(order)
        kept = set(edges)
        for e in order:
            if rng.random() < drop and _connected_without(n, kept, e):
                kept.discard(e)
        edges = sorted(kept)
    pts = [_pt(*position(c)) for c in cells]
    return make_instance(pts, epsilon, edges)


def _connected_without(n: int, edges: set, removed: tuple[int, int]) -> bool:
    adj = [[] for _ in range(n)]
    for e in edges:
        if e != removed:
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


KINDS = ("path", "cycle", "grid-tree", "caterpillar", "random-tree", "random-lattice", "random-honeycomb")


def generate(kind: str, params: list[str], seed: int | None = None, drop: float = 0.0) -> Instance:
    """Build an instance from a CLI-style kind and parameter list."""

    def one_int(name):
        if len(params) != 1:
            raise InvalidParams(f"{kind} takes exactly one parameter ({name})")
        try:
            return int(params[0])
        except ValueError:
            raise InvalidParams(f"{kind}: {name} must be an integer, got {params[0]!r}") from None

    rng = random.Random(seed)
    if kind == "path":
        return path(one_int("n"))
    if kind == "cycle":
        return cycle(one_int("n"))
    if kind == "grid-tree":
        return grid_tree(one_int("a"))
    if kind == "caterpillar":
        if len(params) != 1:
            raise InvalidParams("caterpillar takes one parameter, a circulant graph 'n;d1,d2,...'")
        return caterpillar(params[0])
    if kind == "random-tree":
        return random_tree(one_int("n"), rng)
    if kind == "random-lattice":
        return random_lattice(one_int("n"), rng, "square", drop)
    if kind == "random-honeycomb":
        return random_lattice(one_int("n"), rng, "honeycomb", drop)
    raise InvalidParams(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
