"""End-to-end acceptance gate.

Each criterion is one test that prints a single [PASS]/[FAIL] line on the
real stdout, so the gate summary is visible even under capture.  Numeric
comparisons allow 1e-9 relative slack; structural comparisons are exact.
"""

import math
import time

import pytest

from conftest import (CORPUS_SIZE, corpus_graph, hierarchy_for,
                      planted_invariant_problems)
from shortcycle.approx import approximate_girth
from shortcycle.explorer import cluster_or_cycle
from shortcycle.generators import gnm, named, random_unit_graph
from shortcycle.hierarchy import seed_path_store
from shortcycle.oracles import (all_pairs_distances, brute_cluster,
                                brute_eligible_edges, exact_girth,
                                smallest_cycle_radius)
from shortcycle.planting import plant
from shortcycle.rangeindex import build_index, cursor_next, open_cursor
from shortcycle.verify import run_verification

INF = math.inf
REL = 1e-9
ACCEPT_SEED = 1729

# violations of the alpha bounds, as opposed to broken witness cycles
BOUND_MARKERS = ("below girth", "exceeds bound", "forest but")


@pytest.fixture
def report(capfd):
    # print the gate line on the real terminal regardless of capture mode
    def _report(num, ok, detail):
        with capfd.disabled():
            print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}",
                  flush=True)
        assert ok, f"criterion {num}: {detail}"
    return _report


@pytest.fixture(scope="module")
def guarantee_report():
    # 200 connected random graphs plus 20 adversarial instances per regime,
    # each solved exactly and approximately for k in {1, 2, 3}, witnesses
    # materialized and validated; shared by criteria 1 and 2
    return run_verification(200, (1, 2, 3), 20, 150, ACCEPT_SEED,
                            adversarial_per_regime=20)


@pytest.fixture(scope="module")
def cluster_runs():
    # every (graph, k, center) exploration on the shared corpus, kept with
    # its store; criteria 4 and 8 read different facets of the same runs
    runs = []
    for gi in range(CORPUS_SIZE):
        g = corpus_graph(gi)
        for k in (1, 2, 3):
            h = hierarchy_for(g, k)
            index = build_index(g, h)
            for u in range(g.n):
                store = seed_path_store(h)
                out = cluster_or_cycle(g, h, index, store, u)
                runs.append((gi, g, h, k, u, out, store))
    return runs


def test_criterion_1_approximation_guarantee(guarantee_report, report):
    rep = guarantee_report
    bad = [v for v in rep.violations if any(m in v for m in BOUND_MARKERS)]
    ratios = ", ".join(f"k={k}: {r:.4f}" for k, r in sorted(rep.max_ratio.items()))
    ok = not bad and rep.elapsed < 120.0
    report(1, ok, f"{rep.trials} graphs x k in {{1,2,3}}, "
                  f"{len(bad)} bound violations, max alpha/g [{ratios}], "
                  f"{rep.elapsed:.1f} s")


def test_criterion_2_cycle_validity(guarantee_report, report):
    rep = guarantee_report
    bad = [v for v in rep.violations if not any(m in v for m in BOUND_MARKERS)]
    report(2, not bad,
           f"witness materialized and validated on every finite trial of "
           f"criterion 1, {len(bad)} broken cycles")


def test_criterion_3_range_index_equivalence(report):
    started = time.monotonic()
    checks = mismatches = 0
    for gi in range(CORPUS_SIZE):
        g = corpus_graph(gi)
        apsp = all_pairs_distances(g)
        for k in (1, 2, 3):
            h = hierarchy_for(g, k)
            index = build_index(g, h)
            for v in range(g.n):
                realized = {-apsp[s][v] for s in range(g.n) if apsp[s][v] < INF}
                realized.update((-INF, 0.0, INF))
                for i in range(h.k):
                    for y0 in realized:
                        cur = open_cursor(index, v, i, y0)
                        got = []
                        while True:
                            e = cursor_next(cur)
                            if e is None:
                                break
                            got.append(e)
                        checks += 1
                        if got != brute_eligible_edges(g, h, v, i, y0):
                            mismatches += 1
    report(3, mismatches == 0,
           f"{checks} cursor drains against the brute oracle, "
           f"{mismatches} mismatches, {time.monotonic() - started:.1f} s")


def test_criterion_4_cluster_equivalence(cluster_runs, report):
    bad = 0
    clusters = cycles = 0
    for gi, g, h, k, u, out, store in cluster_runs:
        if out.is_cluster:
            clusters += 1
            ref = brute_cluster(g, h, u)
            apsp_u = all_pairs_distances(g)[u]
            if set(out.members) != ref.vertices:
                bad += 1
                continue
            if any(store.get_d(u, v) != apsp_u[v] for v in out.members):
                bad += 1
        else:
            cycles += 1
            r = smallest_cycle_radius(g, h, u)
            if not out.witness.bound <= 2.0 * r * (1.0 + REL):
                bad += 1
    report(4, bad == 0,
           f"{clusters} acyclic + {cycles} early-stopped runs over "
           f"{CORPUS_SIZE} graphs x k in {{1,2,3}}, {bad} violations")


def test_criterion_5_distance_exactness(report):
    started = time.monotonic()
    entries = bad = 0
    for gi in range(CORPUS_SIZE):
        g = corpus_graph(gi)
        apsp = all_pairs_distances(g)
        for k in (1, 2, 3):
            res = approximate_girth(g, k, rng_seed=gi * 7 + k)
            for (u, v), d in res.store.iter_d():
                entries += 1
                if d != apsp[u][v]:
                    bad += 1
    report(5, bad == 0,
           f"{entries} stored distances across {CORPUS_SIZE} graphs x "
           f"k in {{1,2,3}}, {bad} differ from all-pairs ground truth, "
           f"{time.monotonic() - started:.1f} s")


def test_criterion_6_cluster_size_scaling(report):
    started = time.monotonic()
    worst = 0.0
    detail = []
    for n in (1024, 2048, 4096):
        g = gnm(n, 3 * n, 0.0, 1.0, 1000 + n)
        for k in (2, 3):
            total = 0
            for seed in range(5):
                res = approximate_girth(g, k, rng_seed=seed)
                total += res.diagnostics["cluster_members_total"]
            mean = total / 5.0
            budget = 10.0 * k * n ** (1.0 + 1.0 / k)
            worst = max(worst, mean / budget)
            detail.append(f"n={n},k={k}: {mean / budget:.3f}")
    elapsed = time.monotonic() - started
    report(6, worst <= 1.0 and elapsed < 300.0,
           f"mean member total / 10 k n^(1+1/k) worst {worst:.3f} "
           f"[{'; '.join(detail)}], {elapsed:.1f} s")


def test_criterion_7_planting_construction(report):
    started = time.monotonic()
    bases = [named("petersen"), named("heawood"), named("cycle", 8)]
    # deterministic rejection scan for unit bases with finite girth >= 4
    sizes = (12, 16, 20, 24, 30)
    t = 0
    while len(bases) < 13 and t < 400:
        g = random_unit_graph(sizes[t % 5], 2.5 / sizes[t % 5], 4000 + t)
        if 4.0 <= exact_girth(g) < INF:
            bases.append(g)
        t += 1
    assert len(bases) == 13
    bad = []
    for bi, base in enumerate(bases):
        problems = planted_invariant_problems(plant(base, 0.1))
        if problems:
            bad.append(f"base {bi}: {problems[0]}")
    elapsed = time.monotonic() - started
    report(7, not bad and elapsed < 60.0,
           f"3 named + 10 random bases, invariants and every-edge replant "
           f"girth checks, {len(bad)} violations, {elapsed:.1f} s")


def test_criterion_8_work_bound(cluster_runs, report):
    bad = 0
    worst = 0.0
    for gi, g, h, k, u, out, store in cluster_runs:
        members = len(out.members)
        if out.insertions > 2 * members + 2:
            bad += 1
        if members:
            worst = max(worst, out.insertions / members)
    report(8, bad == 0,
           f"insertions <= 2 members + 2 on {len(cluster_runs)} runs, "
           f"{bad} violations, worst insertions/members {worst:.3f}")


def test_criterion_9_scale_smoke(report):
    g = gnm(100_000, 400_000, 0.0, 1.0, 99)
    started = time.monotonic()
    res = approximate_girth(g, 3, rng_seed=0)
    elapsed = time.monotonic() - started
    report(9, elapsed < 60.0 and res.alpha < INF,
           f"n=100000 m=400000 k=3: alpha {res.alpha:.6f} "
           f"in {elapsed:.1f} s")
