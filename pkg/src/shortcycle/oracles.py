"""Brute-force reference implementations used by tests and acceptance.

Deliberately simple and slow: plain Dijkstra, literal set-builder
evaluation of the cluster and ball definitions, filter-and-sort edge
enumeration.  Nothing here shares code with the fast pipeline, so these
functions can serve as independent oracles.
"""

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .graph import INF, EdgeRef, WeightedGraph


def dijkstra(
    graph: WeightedGraph,
    source: int,
    skip_eid: int = -1,
    target: int = -1,
    bound: float = INF,
) -> List[float]:
    """Single-source distances, ties popped by (distance, vertex id).

    skip_eid: pretend that edge does not exist.
    target: stop once this vertex is settled.
    bound: abandon the search when the queue minimum reaches it.
    """
    dist = [INF] * graph.n
    dist[source] = 0.0
    heap = [(0.0, source)]
    settled = [False] * graph.n
    while heap:
        d, x = heapq.heappop(heap)
        if settled[x]:
            continue
        if d >= bound:
            break
        settled[x] = True
        if x == target:
            break
        for y, w, eid in graph.adjacency[x]:
            if eid == skip_eid or settled[y]:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


_apsp_cache: Dict[int, Tuple[WeightedGraph, List[List[float]]]] = {}


def all_pairs_distances(graph: WeightedGraph) -> List[List[float]]:
    """n single-source runs, cached per graph object."""
    hit = _apsp_cache.get(id(graph))
    if hit is not None and hit[0] is graph:
        return hit[1]
    table = [dijkstra(graph, s) for s in range(graph.n)]
    if len(_apsp_cache) > 256:
        _apsp_cache.clear()
    _apsp_cache[id(graph)] = (graph, table)
    return table


def exact_girth(graph: WeightedGraph) -> float:
    """Minimum over edges e=(u,v) of dist_{G-e}(u,v) + len(e); inf for forests.

    Exact for simple positively weighted undirected graphs: a shortest cycle
    decomposes at any of its edges e=(u,v) into e plus a simple u-v path
    avoiding e, and conversely every such path closes a cycle.  Edges are
    scanned shortest first so the running bound prunes most Dijkstra runs
    early.
    """
    best = INF
    order = sorted(range(graph.m), key=lambda e: graph.edges[e][2])
    for eid in order:
        u, v, length = graph.edges[eid]
        if length >= best:
            break
        dist = dijkstra(graph, u, skip_eid=eid, target=v, bound=best - length)
        cand = dist[v] + length
        if cand < best:
            best = cand
    return best


def min_cycle_exhaustive(graph: WeightedGraph) -> float:
    """Exhaustive simple-cycle minimum for tiny graphs (meta-check only)."""
    best = INF

    def extend(path: List[int], used: Set[int], length: float, goal: int, avoid_eid: int):
        nonlocal best
        x = path[-1]
        if length >= best:
            return
        for y, w, eid in graph.adjacency[x]:
            if eid == avoid_eid:
                continue
            if y == goal:
                total = length + w
                if total < best:
                    best = total
                continue
            if y in used:
                continue
            used.add(y)
            path.append(y)
            extend(path, used, length + w, goal, avoid_eid)
            path.pop()
            used.remove(y)

    for eid in range(graph.m):
        u, v, length = graph.edges[eid]
        # simple v..u paths avoiding e, closed by e
        extend([v], {u, v}, length, u, eid)
    return best


@dataclass
class BallGraph:
    center: int
    radius: float
    open: bool
    vertices: Set[int]
    edge_ids: Set[int]


def ball_graph(graph: WeightedGraph, u: int, r: float, open: bool = False) -> BallGraph:
    """Literal ball definition: vertices with dist <= r, edges with
    min-endpoint-dist + length <= r (strict < when open)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = all_pairs_distances(graph)[u]
    if open:
        verts = {v for v in range(graph.n) if dist[v] < r}
        eids = {e for e, (a, b, w) in enumerate(graph.edges) if min(dist[a], dist[b]) + w < r}
    else:
        verts = {v for v in range(graph.n) if dist[v] <= r}
        eids = {e for e, (a, b, w) in enumerate(graph.edges) if min(dist[a], dist[b]) + w <= r}
    return BallGraph(u, r, open, verts, eids)


@dataclass
class BruteCluster:
    center: int
    level: int
    vertices: Set[int]
    edge_ids: Set[int]


def brute_cluster(graph: WeightedGraph, hierarchy, u: int) -> BruteCluster:
    """Literal cluster definition at level i = a(u).

    Vertex v is in when dist(u,v) < dist(v, A_{i+1}); edge (v,w) is in when
    dist(u,v) + len(v,w) < dist(w, A_{i+1}) for at least one orientation.
    Strict inequalities throughout.
    """
    i = hierarchy.level_of(u)
    du = all_pairs_distances(graph)[u]
    nxt = [hierarchy.level_dist(v, i + 1) for v in range(graph.n)]
    verts = {v for v in range(graph.n) if du[v] < nxt[v]}
    eids = set()
    for e, (a, b, w) in enumerate(graph.edges):
        if du[a] + w < nxt[b] or du[b] + w < nxt[a]:
            eids.add(e)
    return BruteCluster(u, i, verts, eids)


def _has_cycle(n_vertices: Set[int], edges: List[Tuple[int, int]]) -> bool:
    parent = {v: v for v in n_vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


def smallest_cycle_radius(graph: WeightedGraph, hierarchy, u: int) -> float:
    """Smallest r such that CL(u) intersected with the ball graph of radius r
    contains a cycle; inf when no radius does.

    Candidate radii are the realized edge distances dist(u,e) of cluster
    edges; between consecutive candidates the intersection is constant.
    """
    cl = brute_cluster(graph, hierarchy, u)
    du = all_pairs_distances(graph)[u]
    cand_r = sorted({min(du[a], du[b]) + w for e in cl.edge_ids for a, b, w in [graph.edges[e]]})
    for r in cand_r:
        verts = {v for v in cl.vertices if du[v] <= r}
        edges = []
        for e in cl.edge_ids:
            a, b, w = graph.edges[e]
            if min(du[a], du[b]) + w <= r and a in verts and b in verts:
                edges.append((a, b))
        if _has_cycle(verts, edges):
            return r
    return INF


def brute_eligible_edges(graph: WeightedGraph, hierarchy, v: int, i: int, y0: float) -> List[EdgeRef]:
    """Filter v's incident edges by shifted length < y0, keep adjacency order.

    Shifted length of (v,w) at level i is len(v,w) - dist(w, A_{i+1}); at the
    top level i = k-1 it is -inf, so every edge qualifies.
    """
    if not (0 <= i < hierarchy.k):
        raise ValueError(f"level {i} out of range [0, {hierarchy.k})")
    out = []
    for w, length, eid in graph.adjacency[v]:
        if i == hierarchy.k - 1:
            y = -INF
        else:
            y = length - hierarchy.level_dist(w, i + 1)
        if y < y0:
            out.append(EdgeRef(v, w, length, eid))
    return out
