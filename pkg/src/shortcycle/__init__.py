"""shortcycle: approximate girth of positively weighted undirected graphs.

The main entry point is approximate_girth(), which finds a cycle whose
length is at most (4k/3) times the girth, for a chosen integer k >= 1.
Brute-force reference oracles, a lower-bound instance construction, and a
sequential edge-access oracle simulator live in their own submodules.
"""

from .graph import (
    EdgeRef,
    GraphError,
    WeightedGraph,
    build_graph,
    load_graph,
    parse_edge_list,
    save_graph,
    serialize_edge_list,
)
from .hierarchy import Hierarchy, PathStore, compute_level_distances, sample_hierarchy, seed_path_store
from .rangeindex import EdgeRangeIndex, RangeCursor, build_index, cursor_next, open_cursor
from .explorer import ClusterOutcome, CycleWitness, cluster_or_cycle, relax_next
from .approx import ApproxResult, approximate_girth, edge_scan_phase, materialize_cycle
from . import oracles, planting, generators

__version__ = "0.1.0"

__all__ = [
    "EdgeRef",
    "GraphError",
    "WeightedGraph",
    "build_graph",
    "parse_edge_list",
    "serialize_edge_list",
    "load_graph",
    "save_graph",
    "Hierarchy",
    "PathStore",
    "sample_hierarchy",
    "compute_level_distances",
    "seed_path_store",
    "EdgeRangeIndex",
    "RangeCursor",
    "build_index",
    "open_cursor",
    "cursor_next",
    "ClusterOutcome",
    "CycleWitness",
    "cluster_or_cycle",
    "relax_next",
    "ApproxResult",
    "approximate_girth",
    "edge_scan_phase",
    "materialize_cycle",
    "oracles",
    "planting",
    "generators",
]
