"""Short-cycle planting transformation and the sequential edge-access
oracle simulator.

plant() replaces every vertex v of a unit-length base graph with a star:
n_v replacement vertices joined to a hub by epsilon-edges and chained by
edges of length g0 (the base girth), with v's original unit edges dealt
round-robin to the replacements.  Every chain edge is "plantable":
relabeling any single one to length 1 drops the girth to exactly 1 + 2
epsilon, while an observer who reveals edges only in length-sorted order
must pay many queries before seeing any chain edge at all.  The oracle
simulator charges one query per degree probe or per next-edge reveal and
never reveals a vertex's j-th edge before its first j-1.
"""

import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Set, Tuple, Union

import numpy as np

from .graph import EdgeRef, GraphError, WeightedGraph, build_graph, parse_edge_list, serialize_edge_list
from .oracles import exact_girth

INF = float("inf")


class PlantingError(ValueError):
    pass


@dataclass
class PlantedInstance:
    graph: WeightedGraph
    S: frozenset
    epsilon: float
    g0: float
    star_map: Dict[int, Tuple[int, List[int]]]  # base vertex -> (hub, replacements)
    plantable: List[int]  # edge ids of the length-g0 chain edges
    base_n: int
    base_m: int
    analysis_only: bool  # True iff epsilon == 0; such graphs only feed the oracle


def plant(base: WeightedGraph, epsilon: float, analysis_mode: bool = False) -> PlantedInstance:
    """Apply the transformation to a simple unit-length base with a cycle.

    epsilon must lie in [0,1); epsilon == 0 conflicts with the positive-
    length domain of the main algorithm and is only accepted under
    analysis_mode, where the instance is reserved for the oracle simulator.
    """
    if not (0.0 <= epsilon < 1.0):
        raise PlantingError(f"epsilon must be in [0, 1), got {epsilon}")
    if epsilon == 0.0 and not analysis_mode:
        raise PlantingError("epsilon = 0 makes zero-length edges; pass analysis_mode=True "
                         "to build an oracle-only instance")
    for u, v, length in base.edges:
        if length != 1.0:
            raise PlantingError(f"base must have unit lengths; edge ({u},{v}) has {length}")
    g0 = exact_girth(base)
    if g0 == INF:
        raise PlantingError("base graph has no cycle")
    n0, m0 = base.n, base.m

    # n_v = ceil(2 deg / d_avg) with d_avg = 2 m0 / n0
    n_v = [0] * n0
    for v in range(n0):
        deg = base.degree(v)
        n_v[v] = -(-deg * n0 // m0)  # ceil

    star_map: Dict[int, Tuple[int, List[int]]] = {}
    counter = 0
    for v in range(n0):
        reps = list(range(counter, counter + n_v[v]))
        counter += n_v[v]
        hub = counter
        counter += 1
        star_map[v] = (hub, reps)
    n_new = counter

    # Each unit edge keeps length 1 but moves to replacement endpoints:
    # the i-th incident edge of v (1-indexed, adjacency order) attaches to
    # replacement (i mod n_v) + 1, again 1-indexed.
    position: Dict[Tuple[int, int], int] = {}
    for v in range(n0):
        for idx, (w, _, _) in enumerate(base.adjacency[v], start=1):
            position[(v, w)] = idx

    def endpoint(v: int, w: int) -> int:
        # v_{(i mod n_v)+1} in 1-indexed naming == reps[i mod n_v]
        reps = star_map[v][1]
        return reps[position[(v, w)] % len(reps)]

    edge_list: List[Tuple[int, int, float]] = []
    for u, v, _ in base.edges:
        edge_list.append((endpoint(u, v), endpoint(v, u), 1.0))
    for v in range(n0):
        hub, reps = star_map[v]
        for r in reps:
            edge_list.append((hub, r, epsilon))
    plant_start = len(edge_list)
    for v in range(n0):
        _, reps = star_map[v]
        for a, b in zip(reps, reps[1:]):
            edge_list.append((a, b, float(g0)))

    graph = build_graph(n_new, edge_list, _allow_zero_lengths=(epsilon == 0.0))
    plantable = list(range(plant_start, len(edge_list)))
    S = frozenset(r for v in range(n0) if n_v[v] > 1 for r in star_map[v][1])
    return PlantedInstance(graph, S, epsilon, float(g0), star_map, plantable,
                           n0, m0, analysis_only=(epsilon == 0.0))


def replant_edge(instance: PlantedInstance, eid: int, new_length: float) -> WeightedGraph:
    """Copy of the instance graph with one plantable edge relabeled."""
    if instance.analysis_only:
        raise PlantingError("analysis-mode instance (epsilon = 0) cannot be replanted")
    if eid not in instance.plantable:
        raise PlantingError(f"edge {eid} is not plantable")
    if new_length < 1.0:
        raise PlantingError(f"new length must be >= 1, got {new_length}")
    edges = [(u, v, float(new_length) if e == eid else length)
             for e, (u, v, length) in enumerate(instance.graph.edges)]
    return build_graph(instance.graph.n, edges)


class AccessOracle:
    """Hidden graph behind two queries: degree, and next unseen incident
    edge in non-decreasing-length order (ties by neighbor id).  Per-vertex
    counters start at 1 and only ever move forward."""

    __slots__ = ("graph", "counters", "total_queries", "revealed")

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.counters = [1] * graph.n
        self.total_queries = 0
        self.revealed: Set[int] = set()

    def degree(self, j: int) -> int:
        if not (0 <= j < self.graph.n):
            raise IndexError(f"vertex index {j} out of range")
        self.total_queries += 1
        return self.graph.degree(j)

    def next_edge(self, j: int) -> Optional[EdgeRef]:
        if not (0 <= j < self.graph.n):
            raise IndexError(f"vertex index {j} out of range")
        self.total_queries += 1
        c = self.counters[j]
        if c > self.graph.degree(j):
            return None
        w, length, eid = self.graph.adjacency[j][c - 1]
        self.counters[j] = c + 1
        self.revealed.add(eid)
        return EdgeRef(j, w, length, eid)


def oracle_degree(oracle: AccessOracle, j: int) -> int:
    return oracle.degree(j)


def oracle_next_edge(oracle: AccessOracle, j: int) -> Optional[EdgeRef]:
    return oracle.next_edge(j)


@dataclass
class ExperimentReport:
    budget: int
    queries_used: int
    plantable_total: int
    plantable_revealed: int

    @property
    def fraction_unseen(self) -> float:
        if self.plantable_total == 0:
            return 0.0
        return 1.0 - self.plantable_revealed / self.plantable_total


def _strategy_round_robin(oracle: AccessOracle, budget: int) -> None:
    """One next-edge query per vertex, cycling until the budget runs out."""
    live = list(range(oracle.graph.n))
    while live and oracle.total_queries < budget:
        keep = []
        for pos, v in enumerate(live):
            if oracle.total_queries >= budget:
                keep.extend(live[pos:])
                break
            if oracle.next_edge(v) is not None:
                keep.append(v)
        live = keep


def _strategy_exhaustive(oracle: AccessOracle, budget: int) -> None:
    for v in range(oracle.graph.n):
        while oracle.total_queries < budget:
            if oracle.next_edge(v) is None:
                break
        if oracle.total_queries >= budget:
            return


STRATEGIES: Dict[str, Callable[[AccessOracle, int], None]] = {
    "round-robin": _strategy_round_robin,
    "exhaustive": _strategy_exhaustive,
}


def run_access_experiment(instance: PlantedInstance, budget: int,
                          strategy: Union[str, Callable[[AccessOracle, int], None]]) -> ExperimentReport:
    """Run a deterministic query strategy against a fresh oracle and report
    how many plantable edges it managed to see."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    fn = STRATEGIES[strategy] if isinstance(strategy, str) else strategy
    oracle = AccessOracle(instance.graph)
    if budget > 0:
        fn(oracle, budget)
    plantable = set(instance.plantable)
    return ExperimentReport(budget, oracle.total_queries, len(plantable),
                            len(oracle.revealed & plantable))


def save_instance(instance: PlantedInstance, path) -> None:
    """Edge-list file plus '<path>.json' sidecar with S, epsilon, g0 and
    the plantable edge ids.

    Serialization orders edges by (u, v), which renumbers edge ids, so the
    plantable ids are remapped to match the file a fresh parse produces.
    """
    edges = instance.graph.edges
    order = sorted(range(len(edges)), key=lambda e: edges[e][:2])
    new_id = {old: new for new, old in enumerate(order)}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(instance.graph))
    meta = {
        "S": sorted(instance.S),
        "epsilon": instance.epsilon,
        "g0": instance.g0,
        "plantable": sorted(new_id[e] for e in instance.plantable),
    }
    with open(f"{path}.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> PlantedInstance:
    """Rebuild an instance from its two files.  The star map is not part of
    the sidecar; replanting and oracle experiments do not need it."""
    with open(path, "r", encoding="utf-8") as fh:
        graph = parse_edge_list(fh.read())
    with open(f"{path}.json", "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    return PlantedInstance(graph, frozenset(meta["S"]), float(meta["epsilon"]),
                           float(meta["g0"]), {}, list(meta["plantable"]),
                           base_n=-1, base_m=-1,
                           analysis_only=(float(meta["epsilon"]) == 0.0))
