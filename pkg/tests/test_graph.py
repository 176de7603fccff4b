import math

import pytest
from hypothesis import given, strategies as st

from shortcycle import (
    GraphError,
    build_graph,
    load_graph,
    parse_edge_list,
    save_graph,
    serialize_edge_list,
)
from shortcycle.graph import connected_components, is_connected


def test_build_normalizes_and_sorts(triangle):
    g = build_graph(3, [(2, 0, 5.0), (1, 0, 1.0)])
    assert g.edges == [(0, 2, 5.0), (0, 1, 1.0)]  # eid order preserved, u < v
    # adjacency sorted by (length, neighbor)
    assert g.adjacency[0] == [(1, 1.0, 1), (2, 5.0, 0)]
    assert g.degree(0) == 2 and g.degree(1) == 1
    assert triangle.m == 3


def test_adjacency_ties_break_by_neighbor():
    g = build_graph(4, [(0, 3, 2.0), (0, 1, 2.0), (0, 2, 2.0)])
    assert [w for w, _, _ in g.adjacency[0]] == [1, 2, 3]


@pytest.mark.parametrize(
    "n,edges",
    [
        (3, [(0, 0, 1.0)]),  # self-loop
        (3, [(0, 1, 1.0), (1, 0, 2.0)]),  # duplicate in other orientation
        (3, [(0, 1, 0.0)]),  # zero length
        (3, [(0, 1, -1.0)]),
        (3, [(0, 1, math.inf)]),
        (3, [(0, 1, math.nan)]),
        (3, [(0, 3, 1.0)]),  # vertex out of range
        (-1, []),
    ],
)
def test_build_rejects(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_edge_ref_orientations(weighted_c4):
    e = weighted_c4.edge_ref(1, frm=2)
    assert (e.u, e.v, e.length, e.eid) == (2, 1, 2.0, 1)
    assert e.reversed() == weighted_c4.edge_ref(1, frm=1)
    with pytest.raises(ValueError):
        weighted_c4.edge_ref(1, frm=3)


def test_csr_matches_adjacency(weighted_c4):
    indptr, nbr, lengths, eids = weighted_c4.csr()
    for u in range(weighted_c4.n):
        rows = list(zip(nbr[indptr[u]:indptr[u + 1]],
                        lengths[indptr[u]:indptr[u + 1]],
                        eids[indptr[u]:indptr[u + 1]]))
        assert [(int(a), float(b), int(c)) for a, b, c in rows] == weighted_c4.adjacency[u]


def test_parse_header_and_comments():
    g = parse_edge_list("# a comment\np 5 2\n0 1 1.5\n\n3 4 2.0\n")
    assert g.n == 5 and g.m == 2
    # headerless: n inferred from max id
    g2 = parse_edge_list("0 1 1.5\n3 4 2.0\n")
    assert g2.n == 5


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("p 3\n", "header"),
        ("0 1 1.0\np 3 1\n", "precede"),
        ("p 3 1\np 3 1\n0 1 1.0\n", "duplicate header"),
        ("p 3 2\n0 1 1.0\n", "declares 2 edges"),
        ("0 1\n", "expected"),
        ("0 one 1.0\n", "expected"),
        ("line 2\n", "line 1"),
    ],
)
def test_parse_errors_name_the_line(text, fragment):
    with pytest.raises(GraphError, match=fragment):
        parse_edge_list(text)


def test_serialize_round_trip(tmp_path, weighted_c4):
    text = serialize_edge_list(weighted_c4)
    assert text.splitlines()[0] == "p 4 4"
    again = parse_edge_list(text)
    assert again.n == weighted_c4.n
    assert sorted(again.edges) == sorted(weighted_c4.edges)

    p = tmp_path / "g.edges"
    save_graph(weighted_c4, p)
    assert sorted(load_graph(p).edges) == sorted(weighted_c4.edges)


@given(
    st.integers(1, 12).flatmap(
        lambda n: st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                      st.floats(0.001, 10.0, allow_nan=False)),
            max_size=20,
        ).map(lambda es: (n, es))
    )
)
def test_serialize_parse_identity(case):
    n, raw = case
    seen, triples = set(), []
    for u, v, w in raw:
        if u == v or (min(u, v), max(u, v)) in seen:
            continue
        seen.add((min(u, v), max(u, v)))
        triples.append((u, v, w))
    g = build_graph(n, triples)
    again = parse_edge_list(serialize_edge_list(g))
    assert again.n == g.n and sorted(again.edges) == sorted(g.edges)


def test_components():
    g = build_graph(5, [(0, 1, 1.0), (3, 4, 1.0)])
    comps = [sorted(c) for c in connected_components(g)]
    assert sorted(map(tuple, comps)) == [(0, 1), (2,), (3, 4)]
    assert not is_connected(g)
    assert is_connected(build_graph(1, []))
    assert is_connected(build_graph(0, []))
