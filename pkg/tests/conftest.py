"""Shared fixtures: a deterministic random corpus of small graphs plus a
few hand-built instances reused across test modules."""

import pytest

from shortcycle import build_graph
from shortcycle.generators import gnp
from shortcycle.hierarchy import compute_level_distances, sample_hierarchy

CORPUS_SIZE = 30


def corpus_graph(idx: int):
    # n in [8, 50], expected degree in [2, 5]; connectivity not forced,
    # isolated vertices and small components are part of the point.
    n = 8 + ((idx * 7) % 43)
    p = (2.0 + (idx % 4)) / n
    return gnp(n, p, 0.0, 1.0, 1000 + idx)


def hierarchy_for(graph, k: int, seed: int = 7):
    return compute_level_distances(graph, sample_hierarchy(graph, k, seed))


@pytest.fixture(scope="session")
def corpus():
    return [corpus_graph(i) for i in range(CORPUS_SIZE)]


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])


@pytest.fixture
def weighted_c4():
    return build_graph(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0), (0, 3, 4.0)])


def planted_invariant_problems(inst, check_replants=True):
    """All construction invariants of a freshly planted instance, as a list
    of human-readable violations (empty when everything holds)."""
    from collections import Counter

    from shortcycle.oracles import exact_girth
    from shortcycle.planting import replant_edge

    g = inst.graph
    n0, m0, g0, eps = inst.base_n, inst.base_m, inst.g0, inst.epsilon
    out = []
    if not (3 * n0 <= g.n <= 4 * n0):
        out.append(f"n = {g.n} outside [3 n0, 4 n0] = [{3 * n0}, {4 * n0}]")
    if len(inst.S) < n0:
        out.append(f"|S| = {len(inst.S)} < n0 = {n0}")
    nv_sum = sum(len(reps) for _, reps in inst.star_map.values())
    if not (2 * n0 <= nv_sum <= 3 * n0):
        out.append(f"sum of n_v = {nv_sum} outside [{2 * n0}, {3 * n0}]")
    for u, v, length in g.edges:
        if not (eps <= length <= g0):
            out.append(f"edge ({u},{v}) length {length} outside [{eps}, {g0}]")
            break
    girth = exact_girth(g)
    if girth < g0 * (1 - 1e-9):
        out.append(f"girth {girth} < g0 = {g0}")
    by_len = {s: Counter() for s in inst.S}
    heavy_ok = True
    for u, v, length in g.edges:
        if length == g0 and not (u in inst.S and v in inst.S):
            heavy_ok = False
        for x in (u, v):
            if x in by_len:
                by_len[x][length] += 1
    if not heavy_ok:
        out.append(f"a length-{g0} edge leaves S")
    lo, hi = m0 // (2 * n0), -(-m0 // n0)
    for s, cnt in by_len.items():
        unit = cnt[1.0]
        if cnt[eps] != 1 or not (1 <= cnt[g0] <= 2) or not (lo <= unit <= hi):
            out.append(f"S-vertex {s} degrees eps={cnt[eps]} g0={cnt[g0]} unit={unit}")
            break
    if check_replants:
        want = 1.0 + 2.0 * eps
        for eid in inst.plantable:
            got = exact_girth(replant_edge(inst, eid, 1.0))
            if abs(got - want) > 1e-9 * want:
                out.append(f"replanting edge {eid} gives girth {got}, want {want}")
                break
    return out
