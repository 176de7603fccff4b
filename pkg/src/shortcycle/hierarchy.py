"""Sampled level hierarchy A_0 .. A_k with level distances and pivots.

A_0 is the whole vertex set, A_k is empty, and each intermediate level is
an independent downsample of the previous one with probability n^(-1/k).
Level distances dist(u, A_i) come from one multi-source Dijkstra per level;
the virtual source is never materialized, the queue simply starts with all
A_i members at distance 0.

Priority-queue entries are (distance, pivot, vertex), so ties resolve
toward the smallest pivot id first.  This does more than make runs
reproducible: it makes every parent chain stay inside its pivot's own
shortest-path tree, which the witness materialization relies on.
"""

import heapq
import warnings
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .graph import INF, EdgeRef, WeightedGraph


def effective_k(n: int, k: int) -> int:
    """Clamp k to ceil(log2 n); beyond that extra levels buy nothing."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n >= 2:
        cap = max(1, (n - 1).bit_length())
        if k > cap:
            warnings.warn(f"k={k} clamped to {cap} (= ceil(log2 {n}))", stacklevel=3)
            return cap
    return k


def sample_hierarchy(graph: WeightedGraph, k: int, rng_seed: int) -> List[Set[int]]:
    """Draw the level sets A_0 .. A_k, reproducibly from rng_seed."""
    k = effective_k(graph.n, k)
    n = graph.n
    levels: List[Set[int]] = [set(range(n))]
    rng = np.random.default_rng(rng_seed)
    p = n ** (-1.0 / k) if n > 0 else 0.0
    for _ in range(1, k):
        prev = np.fromiter(sorted(levels[-1]), dtype=np.int64, count=len(levels[-1]))
        keep = prev[rng.random(len(prev)) < p] if len(prev) else prev
        levels.append(set(int(v) for v in keep))
    levels.append(set())
    return levels


class Hierarchy:
    """Levels plus per-level distance/pivot/parent arrays.

    dist has k+1 rows (row 0 all zeros, row k all inf); piv, parv, pareid
    have k rows covering levels 0 .. k-1, with -1 marking "none".
    """

    __slots__ = ("k", "n", "levels", "graph", "dist", "piv", "parv", "pareid", "_a", "_rows")

    def __init__(self, graph, levels, dist, piv, parv, pareid):
        self.graph = graph
        self.levels = [frozenset(s) for s in levels]
        self.k = len(levels) - 1
        self.n = graph.n
        self.dist = dist
        self.piv = piv
        self.parv = parv
        self.pareid = pareid
        a = np.zeros(graph.n, dtype=np.int32)
        for i in range(1, self.k):
            for u in self.levels[i]:
                if a[u] < i:
                    a[u] = i
        self._a = a
        self._rows: Dict[Tuple[str, int], list] = {}

    def level_of(self, u: int) -> int:
        return int(self._a[u])

    def level_dist(self, u: int, i: int) -> float:
        return float(self.dist[i][u])

    def pivot(self, u: int, i: int) -> int:
        return int(self.piv[i][u])

    def pivot_parent_edge(self, u: int, i: int) -> Optional[EdgeRef]:
        eid = int(self.pareid[i][u])
        if eid < 0:
            return None
        return self.graph.edge_ref(eid, int(self.parv[i][u]))

    def dist_row(self, i: int) -> List[float]:
        key = ("d", i)
        row = self._rows.get(key)
        if row is None:
            row = self.dist[i].tolist()
            self._rows[key] = row
        return row

    def piv_row(self, i: int) -> List[int]:
        key = ("p", i)
        row = self._rows.get(key)
        if row is None:
            row = self.piv[i].tolist()
            self._rows[key] = row
        return row


def _multi_source_dijkstra(graph: WeightedGraph, sources: Sequence[int]):
    """Distances to the nearest source, carrying the source as pivot.

    Relaxation is lexicographic on (distance, pivot), so among equidistant
    sources the smallest id wins everywhere in its tree.
    """
    n = graph.n
    dist = [INF] * n
    piv = [-1] * n
    parv = [-1] * n
    pareid = [-1] * n
    heap = []
    for s in sorted(sources):
        dist[s] = 0.0
        piv[s] = s
        heap.append((0.0, s, s))
    heapq.heapify(heap)
    adjacency = graph.adjacency
    while heap:
        d, p, x = heapq.heappop(heap)
        if d != dist[x] or p != piv[x]:
            continue
        for y, w, eid in adjacency[x]:
            nd = d + w
            if nd < dist[y] or (nd == dist[y] and p < piv[y]):
                dist[y] = nd
                piv[y] = p
                parv[y] = x
                pareid[y] = eid
                heapq.heappush(heap, (nd, p, y))
    return dist, piv, parv, pareid


def compute_level_distances(graph: WeightedGraph, levels: Sequence[Set[int]]) -> Hierarchy:
    """Fill the per-level arrays: row 0 is trivial, rows 1..k-1 come from
    multi-source Dijkstra, row k is all inf (A_k is empty)."""
    k = len(levels) - 1
    n = graph.n
    dist = np.full((k + 1, n), INF, dtype=np.float64)
    piv = np.full((k, n), -1, dtype=np.int32)
    parv = np.full((k, n), -1, dtype=np.int32)
    pareid = np.full((k, n), -1, dtype=np.int32)
    dist[0, :] = 0.0
    if n:
        piv[0, :] = np.arange(n, dtype=np.int32)
    for i in range(1, k):
        if not levels[i]:
            continue
        d, p, pv, pe = _multi_source_dijkstra(graph, levels[i])
        dist[i, :] = d
        piv[i, :] = p
        parv[i, :] = pv
        pareid[i, :] = pe
    return Hierarchy(graph, levels, dist, piv, parv, pareid)


class PathStore:
    """Discovered exact distances d and last path edges pi, keyed by
    (center, target).  Missing entries read as inf / None."""

    __slots__ = ("d", "pi")

    def __init__(self):
        self.d: Dict[Tuple[int, int], float] = {}
        self.pi: Dict[Tuple[int, int], Optional[EdgeRef]] = {}

    def get_d(self, c: int, v: int) -> float:
        return self.d.get((c, v), INF)

    def get_pi(self, c: int, v: int) -> Optional[EdgeRef]:
        return self.pi.get((c, v))

    def put(self, c: int, v: int, dist: float, edge: Optional[EdgeRef]) -> None:
        self.d[(c, v)] = dist
        self.pi[(c, v)] = edge

    def iter_d(self):
        return iter(self.d.items())

    def __len__(self) -> int:
        return len(self.d)


def seed_path_store(hierarchy: Hierarchy) -> PathStore:
    """Record d(p_i(u), u) = dist(u, A_i) for every u and level i < k,
    with the matching parent edge (None when u is its own pivot)."""
    store = PathStore()
    for i in range(hierarchy.k):
        dist_row = hierarchy.dist[i]
        piv_row = hierarchy.piv[i]
        for u in range(hierarchy.n):
            p = int(piv_row[u])
            if p < 0:
                continue
            store.put(p, u, float(dist_row[u]), hierarchy.pivot_parent_edge(u, i))
    return store
