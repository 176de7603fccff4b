import math

import pytest

from conftest import hierarchy_for
from shortcycle import build_graph
from shortcycle.generators import gnp
from shortcycle.oracles import (
    all_pairs_distances,
    ball_graph,
    brute_eligible_edges,
    dijkstra,
    exact_girth,
    min_cycle_exhaustive,
    smallest_cycle_radius,
)

INF = math.inf


def test_dijkstra_on_square(weighted_c4):
    assert dijkstra(weighted_c4, 0) == [0.0, 1.0, 3.0, 4.0]
    # removing the cheap edge forces the long way round
    d = dijkstra(weighted_c4, 0, skip_eid=0)
    assert d[1] == 9.0
    # target stop still settles the target itself
    assert dijkstra(weighted_c4, 0, target=2)[2] == 3.0


def test_dijkstra_disconnected():
    g = build_graph(4, [(0, 1, 2.0)])
    d = dijkstra(g, 0)
    assert d[1] == 2.0 and d[2] == INF and d[3] == INF


def test_all_pairs_cached_and_symmetric(corpus):
    g = corpus[0]
    t1 = all_pairs_distances(g)
    assert all_pairs_distances(g) is t1
    for u in range(g.n):
        for v in range(u):
            # the two directions sum the same path in opposite orders, so
            # they can disagree in the last ulp
            if t1[u][v] == INF:
                assert t1[v][u] == INF
            else:
                assert t1[u][v] == pytest.approx(t1[v][u], rel=1e-12)


def test_exact_girth_small_cases(triangle, weighted_c4):
    assert exact_girth(triangle) == 3.0
    assert exact_girth(weighted_c4) == 10.0
    # two triangles sharing vertex 2: cheaper one wins
    g = build_graph(5, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0),
                        (2, 3, 2.0), (2, 4, 2.0), (3, 4, 3.0)])
    assert exact_girth(g) == 3.0
    assert exact_girth(build_graph(4, [(0, 1, 1.0), (1, 2, 1.0)])) == INF
    assert exact_girth(build_graph(0, [])) == INF


def test_exact_girth_vs_exhaustive():
    for seed in range(15):
        g = gnp(9, 0.4, 0.0, 1.0, 400 + seed)
        assert exact_girth(g) == pytest.approx(min_cycle_exhaustive(g), rel=1e-12)


def test_ball_graph(triangle):
    b0 = ball_graph(triangle, 0, 0.0)
    assert b0.vertices == {0} and b0.edge_ids == set()
    assert ball_graph(triangle, 0, 0.0, open=True).vertices == set()
    b1 = ball_graph(triangle, 0, 1.0)
    assert b1.vertices == {0, 1, 2} and b1.edge_ids == {0, 1}
    assert ball_graph(triangle, 0, 1.0, open=True).vertices == {0}
    assert ball_graph(triangle, 0, 2.0).edge_ids == {0, 1, 2}
    with pytest.raises(ValueError):
        ball_graph(triangle, 0, -0.5)


def test_ball_monotone(corpus):
    g = corpus[3]
    for r1, r2 in ((0.0, 0.5), (0.5, 1.2), (1.2, 3.0)):
        a, b = ball_graph(g, 0, r1), ball_graph(g, 0, r2)
        assert a.vertices <= b.vertices and a.edge_ids <= b.edge_ids
        o = ball_graph(g, 0, r2, open=True)
        assert o.vertices <= b.vertices and o.edge_ids <= b.edge_ids


def test_smallest_cycle_radius(triangle):
    h = hierarchy_for(triangle, 1)
    # candidate radii are the realized edge distances {1, 2}; at r = 1 the
    # two tree edges cannot close anything, at r = 2 edge (1,2) enters
    assert smallest_cycle_radius(triangle, h, 0) == 2.0
    g = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    assert smallest_cycle_radius(g, hierarchy_for(g, 1), 0) == INF


def test_eligible_edges_levels(weighted_c4):
    h = hierarchy_for(weighted_c4, 1)
    # single level is the top level: everything qualifies for finite y0
    for v in range(4):
        got = brute_eligible_edges(weighted_c4, h, v, 0, 0.0)
        assert [(e.v, e.length) for e in got] == [(w, l) for w, l, _ in weighted_c4.adjacency[v]]
    with pytest.raises(ValueError):
        brute_eligible_edges(weighted_c4, h, 0, 1, 0.0)
    with pytest.raises(ValueError):
        brute_eligible_edges(weighted_c4, h, 0, -1, 0.0)
