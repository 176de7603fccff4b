"""Full approximation pipeline.

Initialize (hierarchy, range index, seeded path store), explore every
vertex's cluster keeping the best cycle bound, then run the edge scan:
for every edge (v,w) in both orientations and every level i, the pivot
u = p_i(v) proposes d(u,v) + len(v,w) + d(u,w), accepted when it improves
the bound and the closing edge is not the last edge of either stored path.
For connected cyclic inputs the final bound alpha satisfies
g <= alpha <= (4k/3) g against the true girth g.

Scanning both orientations costs 2km candidate evaluations and realizes
the access-from-the-nearer-endpoint assumption that the heavy-edge
correctness argument needs.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import _backend
from .explorer import ClusterOutcome, CycleWitness, cluster_or_cycle
from .graph import INF, EdgeRef, WeightedGraph
from .hierarchy import (Hierarchy, PathStore, compute_level_distances,
                        effective_k, sample_hierarchy, seed_path_store)
from .rangeindex import build_index


@dataclass
class MaterializedCycle:
    vertices: List[int]   # no repeated endpoint; closure is implied
    edge_ids: List[int]   # len(edge_ids) == len(vertices)
    length: float


@dataclass
class ApproxResult:
    alpha: float
    witness: Optional[CycleWitness]
    materialized: Optional[MaterializedCycle]
    k: int
    seed: int
    n: int
    m: int
    diagnostics: Dict
    store: object = None  # PathStore or compact equivalent; not serialized

    def to_json_dict(self) -> Dict:
        doc = {
            "alpha": _json_num(self.alpha),
            "witness": None,
            "k": self.k,
            "seed": self.seed,
            "n": self.n,
            "m": self.m,
            "diagnostics": dict(self.diagnostics),
        }
        if self.witness is not None:
            doc["witness"] = {
                "u": self.witness.u,
                "v": self.witness.v,
                "w": self.witness.w,
                "bound": _json_num(self.witness.bound),
            }
        if self.materialized is not None:
            doc["cycle"] = list(self.materialized.vertices)
            doc["diagnostics"]["cycle_length"] = self.materialized.length
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _json_num(x: float):
    # JSON has no inf literal; the CLI documents the string form
    return x if x < INF else "inf"


def edge_scan_phase(graph: WeightedGraph, hierarchy: Hierarchy, store,
                    alpha: float, witness: Optional[CycleWitness] = None,
                    trace: Optional[List[float]] = None):
    """Second phase of the pipeline; returns the updated (alpha, witness).

    Missing distances read +inf, so candidates touching unexplored pairs
    reject themselves.
    """
    k = hierarchy.k
    piv_rows = [hierarchy.piv_row(i) for i in range(k)]
    for eid, (a, b, length) in enumerate(graph.edges):
        for v, w in ((a, b), (b, a)):
            for i in range(k):
                u = piv_rows[i][v]
                if u < 0:
                    continue
                cand = store.get_d(u, v) + length + store.get_d(u, w)
                if cand < alpha:
                    pv = store.get_pi(u, v)
                    if pv is not None and pv.eid == eid:
                        continue
                    pw = store.get_pi(u, w)
                    if pw is not None and pw.eid == eid:
                        continue
                    alpha = cand
                    witness = CycleWitness(u, v, w, EdgeRef(v, w, length, eid), cand)
                    if trace is not None:
                        trace.append(cand)
    return alpha, witness


def materialize_cycle(store, witness: CycleWitness, graph: WeightedGraph) -> MaterializedCycle:
    """Turn a witness into an explicit simple cycle.

    Walks parent edges from both endpoints to the center, trims the shared
    prefix at the lowest common ancestor u', and stitches
    path(u'..v) + closing edge + path(w..u').  The result has length
    alpha - 2 d(u,u') <= alpha.
    """
    u = witness.u

    def chain(x: int) -> Tuple[List[int], List[int]]:
        verts = [x]
        eids: List[int] = []
        steps = 0
        while x != u:
            e = store.get_pi(u, x)
            if e is None or steps > graph.n:
                raise RuntimeError(f"path store has no parent chain from {x} to {u}")
            x = e.u
            verts.append(x)
            eids.append(e.eid)
            steps += 1
        verts.reverse()  # center first
        eids.reverse()
        return verts, eids

    vseq, veids = chain(witness.v)
    wseq, weids = chain(witness.w)
    shared = 0
    while shared < len(vseq) and shared < len(wseq) and vseq[shared] == wseq[shared]:
        shared += 1
    # vseq[shared-1] is the LCA u'
    cyc_vertices = vseq[shared - 1:] + wseq[:shared - 1:-1]
    cyc_eids = veids[shared - 1:] + [witness.edge.eid] + list(reversed(weids[shared - 1:]))
    total = 0.0
    for eid in cyc_eids:
        total += graph.edges[eid][2]
    return MaterializedCycle(cyc_vertices, cyc_eids, total)


def _explore_centers(graph, hierarchy, index, store, lo: int, hi: int):
    """Sequentially explore centers [lo, hi); returns counters and the
    list of per-center improving bounds for deterministic merging."""
    insertions = skips = pops = members_total = 0
    best = INF
    candidates: List[Tuple[int, CycleWitness]] = []
    for u in range(lo, hi):
        out = cluster_or_cycle(graph, hierarchy, index, store, u)
        insertions += out.insertions
        skips += out.skips
        pops += out.pops
        members_total += len(out.members)
        if out.witness is not None and out.witness.bound < best:
            best = out.witness.bound
            candidates.append((u, out.witness))
    return insertions, skips, pops, members_total, candidates


def approximate_girth(graph: WeightedGraph, k: int, rng_seed: int,
                      materialize: bool = False, parallel: bool = False,
                      backend: Optional[str] = None) -> ApproxResult:
    """Run the whole pipeline and return the best cycle bound found.

    alpha is +inf exactly when the graph is a forest.  materialize=True
    additionally recovers an explicit simple cycle from the witness.
    backend picks the compiled or pure implementation ("fast"/"pure",
    default: compiled when available).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    chosen = _backend.resolve(backend)
    levels = sample_hierarchy(graph, k, rng_seed)
    k_eff = len(levels) - 1

    if chosen == "fast":
        from . import _fastdriver
        alpha, witness, store, diagnostics = _fastdriver.run_pipeline(graph, levels, parallel)
    else:
        hierarchy = compute_level_distances(graph, levels)
        index = build_index(graph, hierarchy)
        store = seed_path_store(hierarchy)
        trace: List[float] = []
        insertions = skips = pops = members_total = 0
        alpha = INF
        witness: Optional[CycleWitness] = None
        if parallel and graph.n >= 2:
            import os
            workers = min(8, os.cpu_count() or 1, graph.n)
            bounds = [graph.n * j // workers for j in range(workers + 1)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_explore_centers, graph, hierarchy, index, store,
                                       bounds[j], bounds[j + 1])
                           for j in range(workers)]
                results = [f.result() for f in futures]
        else:
            results = [_explore_centers(graph, hierarchy, index, store, 0, graph.n)]
        for ins, sk, po, mt, candidates in results:
            insertions += ins
            skips += sk
            pops += po
            members_total += mt
            for _, cand in candidates:
                if cand.bound < alpha:
                    alpha = cand.bound
                    witness = cand
                    trace.append(alpha)
        cluster_phase_alpha = alpha
        alpha, witness = edge_scan_phase(graph, hierarchy, store, alpha, witness, trace)
        diagnostics = {
            "backend": "pure",
            "queue_insertions": insertions,
            "degenerate_skips": skips,
            "queue_pops": pops,
            "cluster_members_total": members_total,
            "cluster_phase_alpha": _json_num(cluster_phase_alpha),
            "edge_scan_candidates": 2 * graph.m * k_eff,
            "alpha_trace": trace,
        }

    diagnostics["k_requested"] = k
    diagnostics["k_effective"] = k_eff
    mat = None
    if materialize and witness is not None:
        mat = materialize_cycle(store, witness, graph)
    return ApproxResult(alpha, witness, mat, k_eff, rng_seed, graph.n, graph.m,
                        diagnostics, store)
