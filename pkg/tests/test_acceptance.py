"""Acceptance criteria, one check per criterion.

Each check prints a single PASS/FAIL line. Run directly with
``python tests/test_acceptance.py`` for just the table, or through pytest.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import sys
import time

import pytest

from oracles import brute_force_mis, exhaustive_k_resilience, random_corpus, random_removals
from scs_resilience.generators import caterpillar, cycle, grid_tree, path, random_tree
from scs_resilience.meeting import (
    brute_force_meet,
    build_meeting_graph,
    count_starving,
    prevention_test,
    same_ring_edges,
)
from scs_resilience.reduction import (
    CirculantGraph,
    build_caterpillar_scs,
    circulant_from_ring,
    knn_augmentation,
    verify_reduction,
)
from scs_resilience.resilience import (
    INFINITE,
    k_resilience_general,
    one_resilience_fast,
    starvation_number,
    tree_resilience,
)
from scs_resilience.rings import SLOT_TOL, decompose
from scs_resilience.simulate import SHIFTED, SimConfig, detect_starving, occupancy_invariant_check, simulate

CORPUS_SIZE = 200
REMOVALS_PER_INSTANCE = 20


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(random_corpus(CORPUS_SIZE, seed=2024, max_n=12))


@functools.lru_cache(maxsize=None)
def tree_instances():
    out = [path(n) for n in range(1, 13)]
    out += [grid_tree(a) for a in (1, 2, 3)]
    for n in range(2, 7):
        for r in range(n // 2 + 1):
            for S in itertools.combinations(range(1, n // 2 + 1), r):
                out.append(caterpillar(CirculantGraph.of(n, S)))
    rng = random.Random(77)
    out += [random_tree(rng.randint(1, 12), rng) for _ in range(60)]
    out += [inst for inst in corpus() if inst.graph.is_tree()]
    return tuple(out)


LINES: list[str] = []  # shown again in the pytest terminal summary


def report(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    LINES.append(line)
    print(line, flush=True)
    return ok


def check_1():
    t0 = time.perf_counter()
    cases = [("6;2", "12;1,3,4,5"), ("4;2", "8;1,3,4"), ("9;3", "18;1,3,5,6,7,9")]
    bad = [(a, str(knn_augmentation(CirculantGraph.parse(a)))) for a, b in cases
           if knn_augmentation(CirculantGraph.parse(a)) != CirculantGraph.parse(b)]
    dt = time.perf_counter() - t0
    return report(1, not bad and dt < 1.0, f"augmentation fixtures, mismatches={bad}, {dt:.3f}s (< 1 s)")


def check_2():
    t0 = time.perf_counter()
    count, failures = 0, []
    for n in range(2, 7):
        for r in range(1, n // 2 + 1):
            for S in itertools.combinations(range(1, n // 2 + 1), r):
                g = CirculantGraph.of(n, S)
                try:
                    verify_reduction(g, build_caterpillar_scs(knn_augmentation(g)))
                except Exception as exc:  # any failure counts against the criterion
                    failures.append(f"{g}: {exc}")
                count += 1
    dt = time.perf_counter() - t0
    ok = not failures and dt < 300
    return report(2, ok, f"reduction soundness on {count} circulant graphs (n <= 6), failures={failures}, {dt:.2f}s")


def check_3():
    edges = same_ring_edges(9, [2, 4, 5, 7])
    adj_ok = all(
        {b if a == i else a for a, b in edges if i in (a, b)} == {(i + d) % 9 for d in (2, 4, 5, 7)} for i in range(9)
    )
    circ = circulant_from_ring(9, [2, 7, 4, 5])
    jumps = ",".join(map(str, circ.sorted_jumps()))
    ok = adj_ok and circ == CirculantGraph.of(9, {2, 4})
    return report(3, ok, f"9-slot ring with ties {{2,4,5,7}}: adjacency ok={adj_ok}, circulant_from_ring -> C_{circ.n}{{{jumps}}}")


def check_4():
    t0 = time.perf_counter()
    rng = random.Random(4)
    pair_bad = starve_bad = pairs = runs = 0
    for inst in corpus():
        n = inst.n
        for u, v in itertools.combinations(range(n), 2):
            pairs += 1
            if prevention_test(inst, u, v)[0] != brute_force_meet(inst, u, v):
                pair_bad += 1
        g = build_meeting_graph(inst)
        for removed in random_removals(n, REMOVALS_PER_INSTANCE, rng) if n > 1 else [frozenset()] * REMOVALS_PER_INSTANCE:
            runs += 1
            if detect_starving(simulate(inst, SimConfig(removed=removed))) != count_starving(g, removed):
                starve_bad += 1
    dt = time.perf_counter() - t0
    ok = pair_bad == 0 and starve_bad == 0 and len(corpus()) >= 200 and dt < 600
    return report(
        4,
        ok,
        f"{len(corpus())} instances, {pairs} pairs ({pair_bad} mismatches), "
        f"{runs} simulations ({starve_bad} mismatches), {dt:.1f}s",
    )


def check_5():
    bad = []
    checked = 0
    for inst in tree_instances():
        g = build_meeting_graph(inst)
        for k in range(1, min(4, inst.n) + 1):
            checked += 1
            t, gen = tree_resilience(inst, k).value, k_resilience_general(g, k).value
            if t != gen:
                bad.append((inst.n, k, t, gen))
    fast_bad = 0
    everything = list(corpus()) + list(tree_instances()) + [cycle(n) for n in (4, 6, 8, 10, 12)]
    for inst in everything:
        if one_resilience_fast(inst).value != build_meeting_graph(inst).min_degree():
            fast_bad += 1
    ok = not bad and fast_bad == 0
    return report(
        5,
        ok,
        f"{checked} tree (instance, k) pairs, tree vs general mismatches={len(bad)}; "
        f"fast 1-resilience vs min degree mismatches={fast_bad} over {len(everything)} instances",
    )


def check_6():
    problems = []
    instances = list(corpus()) + list(tree_instances()) + [cycle(n) for n in (4, 6, 8)]
    for idx, inst in enumerate(instances):
        dec = decompose(inst)
        total = 0
        for r in dec.rings:
            total += r.length_slots
            raw = sum(a.length_slots for a in r.arcs)
            if abs(raw - round(raw)) > SLOT_TOL:
                problems.append((idx, "ring length"))
            if len(dec.ring_robots(r.id)) != r.length_slots:
                problems.append((idx, "robots per ring"))
        for t in dec.ties:
            if t.length_slots != round(t.length_slots):
                problems.append((idx, "tie length"))
        if total != inst.n:
            problems.append((idx, "sum of ring lengths"))
        if inst.graph.is_tree() and len(dec.rings) != 1:
            problems.append((idx, "tree ring count"))
        rep = simulate(inst)
        if not occupancy_invariant_check(rep) or any(e.outcome == SHIFTED for e in rep.events):
            problems.append((idx, "full-system simulation"))
        if inst.n > 2:
            rep = simulate(inst, SimConfig(removed=frozenset({0, inst.n - 1})))
            if not occupancy_invariant_check(rep):
                problems.append((idx, "partial occupancy"))
    return report(6, not problems, f"structural invariants on {len(instances)} instances, problems={problems[:5]}")


def check_7():
    bad = []
    for idx, inst in enumerate(corpus()):
        g = build_meeting_graph(inst)
        s = starvation_number(g).size
        if k_resilience_general(g, s).value != inst.n - s or k_resilience_general(g, s + 1).value is not INFINITE:
            bad.append(idx)
        elif inst.n <= 12 and s != brute_force_mis(inst.n, g.edges()):
            bad.append(idx)
    return report(7, not bad, f"k_res(s) = n - s and k_res(s+1) = infinite on {len(corpus())} instances, bad={bad}")


def check_8():
    sq = cycle(4)
    starving_pairs = []
    for removed in itertools.combinations(range(4), 2):
        survivors = set(range(4)) - set(removed)
        if detect_starving(simulate(sq, SimConfig(removed=frozenset(removed)))) == survivors:
            starving_pairs.append(removed)
    g = build_meeting_graph(sq)
    exh = exhaustive_k_resilience(g, 2)
    ok = bool(starving_pairs) and exh == 2 and k_resilience_general(g, 2).value == 2
    return report(8, ok, f"square 4-cycle: starving removal pairs {starving_pairs}, 2-resilience {exh}")


def check_9():
    lower_bad = []
    for inst in tree_instances():
        t = len(decompose(inst).tie_lengths[0])
        n = inst.n
        if not (math.sqrt(math.pi * n) / 2 - 1 <= t <= max(n - 1, 0)):
            lower_bad.append((n, t))
    bound_ok = not lower_bad
    counts = {a: len(decompose(grid_tree(a)).tie_lengths[0]) for a in (2, 3, 4)}
    grid_ok = all(counts[a] == 3 * a - 2 for a in counts)
    report("9a", bound_ok, f"sqrt(pi n)/2 - 1 <= t <= n - 1 on {len(tree_instances())} trees, violations={lower_bad}")
    report(
        "9b",
        grid_ok,
        f"grid-tree distinct tie counts {counts}, expected 3a - 2 = {{2: 4, 3: 7, 4: 10}} "
        "(see notes: unattainable, the count includes n)",
    )
    return bound_ok and grid_ok


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    results = [c() for c in CHECKS]
    sys.exit(0 if all(results) else 1)
