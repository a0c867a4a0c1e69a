"""k-resilience and starvation number.

The general algorithms work on any meeting graph. Selecting a set of robots
to starve is the same as picking an independent set ``S`` of the meeting
graph; the robots that must be removed are then exactly the neighbors of
``S``. The tree algorithms exploit the fact that a tree system has a single
ring whose meeting graph is circulant in ring order, with jumps equal to the
tie lengths.
"""

from __future__ import annotations

import enum
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded, NotATree, ValidationError
from .geometry import Instance
from .meeting import MeetingGraph
from .rings import crossings_between, decompose, distance_to_crossing

DEFAULT_BUDGET = 10**8


class Bound(enum.Enum):
    INFINITE = "infinite"

    def __repr__(self):
        return "INFINITE"


INFINITE = Bound.INFINITE


def default_budget() -> int:
    env = os.environ.get("RESILIENCE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"RESILIENCE_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class ModeResult:
    value: int | None
    frequency: int
    multiset_sizes: tuple[int, ...]


@dataclass(frozen=True)
class ResilienceResult:
    k: int
    value: int | Bound
    starving: tuple[int, ...] = ()
    removed: tuple[int, ...] = ()
    method: str = "general"
    mode: ModeResult | None = field(default=None, compare=False)

    @property
    def is_infinite(self) -> bool:
        return self.value is INFINITE


@dataclass(frozen=True)
class IndependentSet:
    size: int
    members: tuple[int, ...]


def _masks(graph: MeetingGraph) -> list[int]:
    out = []
    for u in range(graph.n):
        m = 0
        for v in graph.adjacency[u]:
            m |= 1 << v
        out.append(m)
    return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.budget:
            raise BudgetExceeded(f"search budget of {self.budget} expansions exhausted")


def k_resilience_general(graph: MeetingGraph, k: int, budget: int | None = None) -> ResilienceResult:
    """Exact k-resilience by enumerating independent k-sets in lexicographic order.

    Each selected robot strikes itself and its neighbors from the available
    list; the resilience of a selection is the number of struck robots that
    were not selected. Branches whose struck count already matches the best
    value are cut.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = graph.n
    nbr = _masks(graph)
    full = (1 << n) - 1
    counter = _Counter(default_budget() if budget is None else budget)
    best: list = [None, ()]
    chosen: list[int] = []

    def rec(start: int, blocked: int, depth: int):
        if depth == k:
            value = blocked.bit_count() - k
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, (tuple(chosen), blocked)
            return
        for u in range(start, n):
            if blocked >> u & 1:
                continue
            counter.tick()
            nb = blocked | (1 << u) | nbr[u]
            if best[0] is not None and nb.bit_count() - (depth + 1) >= best[0]:
                continue
            rest = full & ~nb & ~((1 << (u + 1)) - 1)
            if rest.bit_count() < k - depth - 1:
                continue
            chosen.append(u)
            rec(u + 1, nb, depth + 1)
            chosen.pop()

    rec(0, 0, 0)
    if best[0] is None:
        return ResilienceResult(k, INFINITE, method="general")
    s, blocked = best[1]
    smask = sum(1 << u for u in s)
    return ResilienceResult(k, best[0], s, _bits(blocked & ~smask), method="general")


def one_resilience_fast(instance: Instance) -> ResilienceResult:
    """1-resilience from ring lengths, tie counts and crossing residues.

    For a representative robot ``u`` of ring ``r``: the robots of ``r`` that
    keep it fed are the ``t(r)`` robots at tie-length distances. On another
    ring ``r'`` crossing ``r``, with ``g = gcd(l, l')``, each crossing selects
    one residue class mod ``g`` of ring indices (``l'/g`` robots). Classes are
    measured against a fixed reference robot of ``r'``, so crossings that
    select the same class are not double counted.
    """
    dec = decompose(instance)
    best = None
    for r in dec.rings:
        robots = dec.ring_robots(r.id)
        u = robots[0]
        pu = dec.placements[u]
        same = dec.tie_lengths[r.id]
        q = {robots[(pu.index + l) % r.length_slots] for l in same}
        rho = len(same)
        for other in dec.rings:
            if other.id == r.id:
                continue
            pairs = list(crossings_between(dec, r.id, other.id))
            if not pairs:
                continue
            g = math.gcd(r.length_slots, other.length_slots)
            others = dec.ring_robots(other.id)
            ref = dec.placements[others[0]]
            classes = set()
            for c, dir_u, dir_v in pairs:
                s = round(distance_to_crossing(pu, c, dir_u) - distance_to_crossing(ref, c, dir_v))
                classes.add(s % g)
            rho += len(classes) * other.length_slots // g
            # the robot k slots ahead of ref has shift s + k
            for k_idx, v in enumerate(others):
                if (-k_idx) % g in classes:
                    q.add(v)
        if len(q) != rho:
            raise AssertionError(f"ring {r.id}: counted {rho} preventers but listed {len(q)}")
        if best is None or rho < best.value:
            best = ResilienceResult(1, rho, (u,), tuple(sorted(q)), method="fast1")
    return best


def max_independent_set(graph: MeetingGraph, budget: int | None = None) -> IndependentSet:
    """Exact maximum independent set by branch and bound.

    A vertex of degree at most one among the candidates is always taken.
    Otherwise the highest-degree candidate is branched on (take it, then
    drop it); branches that cannot beat the incumbent are cut.
    """
    n = graph.n
    nbr = _masks(graph)
    counter = _Counter(default_budget() if budget is None else budget)

    # greedy start: repeatedly take a minimum-degree vertex
    cand = (1 << n) - 1
    greedy = 0
    while cand:
        v = min(_bits(cand), key=lambda x: ((nbr[x] & cand).bit_count(), x))
        greedy |= 1 << v
        cand &= ~((1 << v) | nbr[v])
    best = [greedy.bit_count(), greedy]

    def rec(cand: int, cur: int, size: int):
        counter.tick()
        while True:
            if cand == 0:
                if size > best[0]:
                    best[0], best[1] = size, cur
                return
            if size + cand.bit_count() <= best[0]:
                return
            degs = [((nbr[v] & cand).bit_count(), v) for v in _bits(cand)]
            dmin, vmin = min(degs)
            if dmin > 1:
                break
            cur |= 1 << vmin
            size += 1
            cand &= ~((1 << vmin) | nbr[vmin])
        _, v = max(degs, key=lambda dv: (dv[0], -dv[1]))
        rec(cand & ~((1 << v) | nbr[v]), cur | (1 << v), size + 1)
        rec(cand & ~(1 << v), cur, size)

    rec((1 << n) - 1, 0, 0)
    return IndependentSet(best[0], _bits(best[1]))


def starvation_number(graph: MeetingGraph, budget: int | None = None) -> IndependentSet:
    """Largest number of simultaneously starving robots, with a witness set."""
    return max_independent_set(graph, budget)


# --- trees -----------------------------------------------------------------


@dataclass(frozen=True)
class TieSummary:
    L: tuple[int, ...]
    t: int
    n: int
    robots: tuple[int, ...]  # robot ids in ring order


def tie_summary(instance: Instance) -> TieSummary:
    if not instance.graph.is_tree():
        raise NotATree(
            f"communication graph has {len(instance.graph.edges)} edges on {instance.n} nodes; not a tree"
        )
    dec = decompose(instance)
    if len(dec.rings) != 1:
        raise AssertionError(f"tree instance decomposed into {len(dec.rings)} rings")
    L = dec.tie_lengths[0]
    return TieSummary(tuple(L), len(L), instance.n, tuple(dec.ring_robots(0)))


def _summary(source: Instance | TieSummary) -> TieSummary:
    return source if isinstance(source, TieSummary) else tie_summary(source)


def tree_one_resilience(source: Instance | TieSummary) -> int:
    return _summary(source).t


def _mode(values: Sequence[int]) -> tuple[int | None, int]:
    if not values:
        return None, 0
    counts = Counter(values)
    m = min(counts, key=lambda x: (-counts[x], x))
    return m, counts[m]


def tree_two_resilience(source: Instance | TieSummary) -> ResilienceResult:
    """2-resilience of a tree system as ``2t - f``.

    ``f`` is the largest multiplicity in the multisets of sums ``a + b < n``
    and positive differences ``a - b`` of tie lengths, keeping only values
    that are not tie lengths themselves. Sums run over all ordered pairs,
    including ``a == b``.
    """
    s = _summary(source)
    n, L = s.n, s.L
    Lset = set(L)
    valid = [d for d in range(1, n) if d not in Lset]
    if not valid:
        return ResilienceResult(2, INFINITE, method="tree")
    plus = [a + b for a in L for b in L if a + b < n and a + b not in Lset]
    minus = [a - b for a in L for b in L if a - b > 0 and a - b not in Lset]
    m, f = _mode(plus + minus)
    if m is None:
        m = valid[0]
    mode = ModeResult(m, f, (len(plus), len(minus)))
    q = {l % n for l in L} | {(m + l) % n for l in L}
    value = 2 * s.t - f
    if len(q) != value:
        raise AssertionError(f"2-resilience {value} disagrees with witness size {len(q)}")
    return ResilienceResult(
        2, value, (s.robots[0], s.robots[m]), tuple(sorted(s.robots[i] for i in q)), "tree", mode
    )


def tree_k_resilience(source: Instance | TieSummary, k: int, budget: int | None = None) -> ResilienceResult:
    """k-resilience (k >= 3) of a tree system.

    Robot 0 of the ring is fixed (the meeting graph is circulant). Another
    ``k - 2`` robots are chosen from the available list, and the last one is
    the available robot sharing the most preventers with the chosen ones.
    """
    if k < 3:
        raise ValueError("tree_k_resilience needs k >= 3")
    s = _summary(source)
    n, L, t = s.n, s.L, s.t
    nbr = []
    for i in range(n):
        m = 0
        for l in L:
            m |= 1 << ((i + l) % n)
        nbr.append(m)
    full = (1 << n) - 1
    counter = _Counter(default_budget() if budget is None else budget)
    best: list = [None, None]
    chosen = [0]

    def finish(blocked: int):
        avail = full & ~blocked
        if not avail:
            return
        smask = sum(1 << u for u in chosen)
        F = _bits(blocked & ~smask)
        counts = Counter()
        for f_ in F:
            for l in L:
                if f_ + l < n and avail >> (f_ + l) & 1:
                    counts[f_ + l] += 1
                if f_ - l >= 0 and avail >> (f_ - l) & 1:
                    counts[f_ - l] += 1
        if counts:
            a, freq = _mode(list(counts.elements()))
        else:
            a, freq = _bits(avail)[0], 0
        rho = len(F) + t - freq
        if best[0] is None or rho < best[0]:
            best[0], best[1] = rho, (tuple(chosen) + (a,), blocked | (1 << a) | nbr[a])

    def rec(start: int, blocked: int):
        if len(chosen) == k - 1:
            finish(blocked)
            return
        for u in range(start, n):
            if blocked >> u & 1:
                continue
            counter.tick()
            chosen.append(u)
            rec(u + 1, blocked | (1 << u) | nbr[u])
            chosen.pop()

    rec(1, 1 | nbr[0])
    if best[0] is None:
        return ResilienceResult(k, INFINITE, method="tree")
    sel, blocked = best[1]
    smask = sum(1 << u for u in sel)
    removed = _bits(blocked & ~smask)
    if len(removed) != best[0]:
        raise AssertionError(f"k-resilience {best[0]} disagrees with witness size {len(removed)}")
    return ResilienceResult(
        k,
        best[0],
        tuple(sorted(s.robots[i] for i in sel)),
        tuple(sorted(s.robots[i] for i in removed)),
        "tree",
    )


def tree_resilience(source: Instance | TieSummary, k: int, budget: int | None = None) -> ResilienceResult:
    """Dispatch to the tree algorithm for ``k``."""
    s = _summary(source)
    if k == 1:
        q = tuple(sorted(s.robots[l] for l in s.L))
        return ResilienceResult(1, tree_one_resilience(s), (s.robots[0],), q, "tree")
    if k == 2:
        return tree_two_resilience(s)
    return tree_k_resilience(s, k, budget)


def mode_of_differences(values: Sequence[int], n: int) -> ModeResult:
    """Most frequent positive difference among the given integers (naive, quadratic)."""
    vals = list(values)
    if any(not (0 < a < n) for a in vals) or any(a >= b for a, b in zip(vals, vals[1:])):
        raise ValueError("values must be strictly increasing integers in (0, n)")
    diffs = [b - a for i, a in enumerate(vals) for b in vals[i + 1 :]]
    m, f = _mode(diffs)
    return ModeResult(m, f, (len(diffs),))
