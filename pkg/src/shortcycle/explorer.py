"""Lazy cluster exploration: either the full cluster of a center, or an
early stop at the first genuine cycle.

The exploration keeps a min-queue of candidate edges keyed by
d(u,x) + len(e), pulling each member's next eligible incident edge from its
range cursor one at a time.  The reverse of the tree edge that finalized a
member is passed over at cursor-advance time (the walk u..b..a..b repeats
an edge and encloses no cycle), so a popped edge either finalizes an
unvisited vertex's exact distance and parent or closes a genuine cycle.
Filtering at the cursor rather than at the pop keeps the insertion count
within 2 per member, which the driver's work bound relies on.
"""

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .graph import INF, EdgeRef, WeightedGraph
from .hierarchy import Hierarchy, PathStore
from .rangeindex import EdgeRangeIndex, RangeCursor, cursor_next, open_cursor


@dataclass
class CycleWitness:
    """Compact cycle: tree paths from u to v and to w plus the closing
    edge; bound = d(u,v) + len(v,w) + d(u,w)."""

    u: int
    v: int
    w: int
    edge: EdgeRef
    bound: float


@dataclass
class ClusterOutcome:
    kind: str  # "cluster" or "cycle"
    center: int
    members: List[int]  # finalize order; partial when kind == "cycle"
    witness: Optional[CycleWitness]
    insertions: int
    skips: int
    pops: int

    @property
    def is_cluster(self) -> bool:
        return self.kind == "cluster"


class ExplorationState:
    """Per-call working set: the queue, one cursor per touched member, and
    the center's local distances/parents (the store also receives them)."""

    __slots__ = ("graph", "index", "store", "center", "level", "queue",
                 "cursors", "dist", "parent", "insertions", "skips")

    def __init__(self, graph: WeightedGraph, index: EdgeRangeIndex, store: PathStore,
                 center: int, level: int):
        self.graph = graph
        self.index = index
        self.store = store
        self.center = center
        self.level = level
        self.queue: list = []
        self.cursors: Dict[int, RangeCursor] = {}
        self.dist: Dict[int, float] = {}
        self.parent: Dict[int, Optional[EdgeRef]] = {}
        self.insertions = 0
        self.skips = 0


def relax_next(state: ExplorationState, x: int) -> None:
    """Insert x's next eligible incident edge, keyed d(u,x) + len(e).

    Eligibility threshold is y < -d(u,x): the strict cluster edge
    condition.  The reverse of x's own tree edge is passed over when it
    surfaces (it can surface at most once per cursor).  One insertion per
    call; no-op once x's cursor is exhausted.
    """
    cursor = state.cursors.get(x)
    if cursor is None:
        cursor = open_cursor(state.index, x, state.level, -state.dist[x])
        state.cursors[x] = cursor
    e = cursor_next(cursor)
    pe = state.parent[x]
    if e is not None and pe is not None and e.eid == pe.eid:
        state.skips += 1
        e = cursor_next(cursor)
    if e is not None:
        heapq.heappush(state.queue, (state.dist[x] + e.length, e.eid, e.u, e.v))
        state.insertions += 1


def cluster_or_cycle(graph: WeightedGraph, hierarchy: Hierarchy, index: EdgeRangeIndex,
                     store: PathStore, u: int) -> ClusterOutcome:
    """Explore the cluster of u at level a(u).

    Returns the full member set with exact distances recorded into the
    store, or stops at the first genuine cycle with a witness whose bound
    is at most twice the smallest radius at which the cluster contains one.
    """
    state = ExplorationState(graph, index, store, u, hierarchy.level_of(u))
    state.dist[u] = 0.0
    state.parent[u] = None
    store.put(u, u, 0.0, None)
    members = [u]
    relax_next(state, u)
    pops = 0
    edges = graph.edges
    while state.queue:
        key, eid, a, b = heapq.heappop(state.queue)
        pops += 1
        if b not in state.dist:
            length = edges[eid][2]
            edge = EdgeRef(a, b, length, eid)
            state.dist[b] = key
            state.parent[b] = edge
            store.put(u, b, key, edge)
            members.append(b)
            relax_next(state, a)
            relax_next(state, b)
            continue
        pa = state.parent[a]
        if pa is not None and pa.eid == eid:
            # unreachable while relax_next filters the parent edge; kept so a
            # future eligibility change cannot turn this walk into a witness
            state.skips += 1
            relax_next(state, a)
            continue
        length = edges[eid][2]
        alpha = state.dist[a] + length + state.dist[b]
        witness = CycleWitness(u, a, b, EdgeRef(a, b, length, eid), alpha)
        return ClusterOutcome("cycle", u, members, witness,
                              state.insertions, state.skips, pops)
    return ClusterOutcome("cluster", u, members, None,
                          state.insertions, state.skips, pops)
