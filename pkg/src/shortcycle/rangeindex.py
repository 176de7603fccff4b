"""Per-(vertex, level) min-augmented trees over length-sorted incident edges.

For vertex v at level i each incident edge (v,w) carries a shifted length
y = len(v,w) - dist(w, A_{i+1}).  The x-order is the adjacency order
(length, then neighbor id), shared by all levels.  A complete binary tree
in heap layout stores the minimum y of each subtree, so "enumerate edges
with y < y0 in x-order" costs O(log deg) per produced edge: exactly the
Next() primitive the cluster explorer needs.  Leaf arrays are padded to a
power of two with +inf sentinels; at the top level i = k-1 every y is -inf
because dist(., A_k) is +inf.
"""

from typing import List, Optional

import numpy as np

from .graph import INF, EdgeRef, WeightedGraph
from .hierarchy import Hierarchy


class EdgeRangeIndex:
    __slots__ = ("graph", "k", "offs", "caps", "trees")

    def __init__(self, graph, k, offs, caps, trees):
        self.graph = graph
        self.k = k
        self.offs = offs    # per-vertex tree start, int64, length n+1
        self.caps = caps    # per-vertex leaf capacity (power of two)
        self.trees = trees  # one float64 array per level


class RangeCursor:
    """Private iteration state; successive edges come in non-decreasing
    x-order and every produced edge has y < y0."""

    __slots__ = ("index", "v", "i", "y0", "next_leaf", "exhausted", "node_visits")

    def __init__(self, index: EdgeRangeIndex, v: int, i: int, y0: float):
        self.index = index
        self.v = v
        self.i = i
        self.y0 = y0
        self.next_leaf = 0
        self.exhausted = False
        self.node_visits = 0


def vertex_tree_layout(degrees: List[int]):
    """Shared layout helper: capacities and offsets for the flat trees."""
    n = len(degrees)
    caps = np.empty(n, dtype=np.int64)
    offs = np.empty(n + 1, dtype=np.int64)
    offs[0] = 0
    for v, deg in enumerate(degrees):
        cap = 1
        while cap < deg:
            cap *= 2
        caps[v] = cap
        offs[v + 1] = offs[v] + 2 * cap
    return offs, caps


def build_min_tree(tree, base: int, cap: int, ys) -> None:
    """Fill one heap-layout tree in place: leaves, +inf padding, then
    bottom-up minima."""
    deg = len(ys)
    for j in range(deg):
        tree[base + cap + j] = ys[j]
    for j in range(deg, cap):
        tree[base + cap + j] = INF
    for node in range(cap - 1, 0, -1):
        left = tree[base + 2 * node]
        right = tree[base + 2 * node + 1]
        tree[base + node] = left if left <= right else right


def build_index(graph: WeightedGraph, hierarchy: Hierarchy) -> EdgeRangeIndex:
    k = hierarchy.k
    offs, caps = vertex_tree_layout([graph.degree(v) for v in range(graph.n)])
    total = int(offs[graph.n]) if graph.n else 0
    trees = []
    for i in range(k):
        tree = np.empty(total, dtype=np.float64)
        if i == k - 1:
            nxt = None
        else:
            nxt = hierarchy.dist_row(i + 1)
        for v in range(graph.n):
            if nxt is None:
                ys = [-INF] * graph.degree(v)
            else:
                ys = [length - nxt[w] for w, length, _ in graph.adjacency[v]]
            build_min_tree(tree, int(offs[v]), int(caps[v]), ys)
        trees.append(tree)
    return EdgeRangeIndex(graph, k, offs, caps, trees)


def open_cursor(index: EdgeRangeIndex, v: int, i: int, y0: float) -> RangeCursor:
    if not (0 <= i < index.k):
        raise ValueError(f"level {i} out of range [0, {index.k})")
    cursor = RangeCursor(index, v, i, y0)
    tree = index.trees[i]
    base = int(index.offs[v])
    # root min >= y0 means nothing qualifies anywhere
    cursor.node_visits += 1
    if tree[base + 1] >= y0:
        cursor.exhausted = True
    return cursor


def _next_qualifying_leaf(tree, base: int, cap: int, from_leaf: int, y0: float, cursor: RangeCursor) -> int:
    """Smallest leaf index >= from_leaf whose y < y0, or -1."""
    if from_leaf >= cap:
        return -1
    node = cap + from_leaf
    cursor.node_visits += 1
    if tree[base + node] < y0:
        return from_leaf
    while True:
        while node & 1:
            node >>= 1
        if node == 0:
            return -1
        node += 1
        cursor.node_visits += 1
        if tree[base + node] < y0:
            while node < cap:
                cursor.node_visits += 1
                if tree[base + 2 * node] < y0:
                    node = 2 * node
                else:
                    node = 2 * node + 1
            return node - cap
        # subtree clean, keep climbing


def cursor_next(cursor: RangeCursor) -> Optional[EdgeRef]:
    """Next eligible incident edge in x-order, or None when exhausted."""
    if cursor.exhausted:
        return None
    index = cursor.index
    tree = index.trees[cursor.i]
    v = cursor.v
    base = int(index.offs[v])
    cap = int(index.caps[v])
    deg = index.graph.degree(v)
    leaf = _next_qualifying_leaf(tree, base, cap, cursor.next_leaf, cursor.y0, cursor)
    if leaf < 0 or leaf >= deg:
        cursor.exhausted = True
        return None
    cursor.next_leaf = leaf + 1
    w, length, eid = index.graph.adjacency[v][leaf]
    return EdgeRef(v, w, length, eid)
