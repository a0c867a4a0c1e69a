"""Independent brute-force oracles and a shared random corpus for tests."""

from __future__ import annotations

import itertools
import random

from scs_resilience.generators import random_lattice, random_tree
from scs_resilience.meeting import count_starving
from scs_resilience.resilience import INFINITE


def exhaustive_k_resilience(graph, k):
    """Smallest removal set leaving at least ``k`` starving robots, by trying every set."""
    for r in range(graph.n + 1):
        for removed in itertools.combinations(range(graph.n), r):
            if len(count_starving(graph, removed)) >= k:
                return r
    return INFINITE


def brute_force_mis(n, edges):
    best = 0
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        if all(not (adj[u] & mask) for u in range(n) if mask >> u & 1):
            best = size
    return best


def random_corpus(count, seed=2024, max_n=12):
    """Random valid instances: trees with generic angles and square/honeycomb lattice patches."""
    rng = random.Random(seed)
    out = []
    for trial in range(count):
        n = rng.randint(1, max_n)
        kind = trial % 5
        if kind == 0:
            inst = random_tree(n, rng)
        elif kind == 1:
            inst = random_lattice(n, rng, "square")
        elif kind == 2:
            inst = random_lattice(n, rng, "square", drop=0.4)
        elif kind == 3:
            inst = random_lattice(n, rng, "honeycomb")
        else:
            inst = random_lattice(n, rng, "honeycomb", drop=0.3)
        out.append(inst)
    return out


def random_removals(n, count, rng):
    """``count`` random strict subsets of ``range(n)`` (the empty set included)."""
    sets = [frozenset()]
    while len(sets) < count:
        p = rng.random()
        q = frozenset(u for u in range(n) if rng.random() < p)
        if len(q) < n:
            sets.append(q)
    return sets
