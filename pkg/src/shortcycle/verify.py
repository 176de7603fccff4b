"""Guarantee verification driver shared by the CLI and the acceptance
tests: generate, solve exactly, approximate for each k, compare."""

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .approx import ApproxResult, MaterializedCycle, approximate_girth, materialize_cycle
from .generators import connected_gnp, planted_heavy_edge, planted_small_max_edge
from .graph import INF, WeightedGraph
from .oracles import exact_girth

REL_TOL = 1e-9


def validate_cycle(graph: WeightedGraph, mat: MaterializedCycle, alpha: float,
                   tol: float = REL_TOL) -> List[str]:
    """Return the list of ways a materialized cycle is broken (empty = ok):
    simple, closed through existing edges, total length <= alpha."""
    problems = []
    verts = mat.vertices
    eids = mat.edge_ids
    if len(verts) < 3:
        problems.append(f"only {len(verts)} vertices")
    if len(set(verts)) != len(verts):
        problems.append("repeated vertex")
    if len(eids) != len(verts):
        problems.append(f"{len(eids)} edges for {len(verts)} vertices")
        return problems
    total = 0.0
    for idx, eid in enumerate(eids):
        a, b = verts[idx], verts[(idx + 1) % len(verts)]
        if not (0 <= eid < graph.m):
            problems.append(f"edge id {eid} out of range")
            continue
        eu, ev, length = graph.edges[eid]
        if {a, b} != {eu, ev}:
            problems.append(f"edge {eid} does not join {a} and {b}")
        total += length
    if len(set(eids)) != len(eids):
        problems.append("repeated edge")
    if abs(total - mat.length) > tol * max(1.0, abs(total)):
        problems.append(f"stored length {mat.length} != edge sum {total}")
    if total > alpha * (1.0 + tol):
        problems.append(f"cycle length {total} exceeds alpha {alpha}")
    return problems


@dataclass
class VerifyReport:
    trials: int
    ks: List[int]
    max_ratio: Dict[int, float]
    violations: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations


def verification_corpus(trials: int, nmin: int, nmax: int, seed: int,
                        adversarial_per_regime: int) -> List[WeightedGraph]:
    """Deterministic mixed corpus: connected random graphs with lengths in
    (0,1], plus planted instances from both max-edge regimes."""
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(trials):
        n = int(rng.integers(nmin, nmax + 1))
        # connectivity needs avg degree ~ln n; below that rejection
        # sampling of connected G(n,p) practically never terminates
        base = math.log(max(3, n))
        avg_deg = float(rng.uniform(base + 1.0, base + 5.0))
        p = min(1.0, avg_deg / max(1, n - 1))
        graphs.append(connected_gnp(n, p, 0.0, 1.0, int(rng.integers(0, 2**32))))
    for j in range(adversarial_per_regime):
        graphs.append(planted_small_max_edge(12 + j, seed + 7000 + j))
        graphs.append(planted_heavy_edge(12 + j, seed + 9000 + j))
    return graphs


def run_verification(trials: int, ks: Sequence[int], nmin: int, nmax: int, seed: int,
                     adversarial_per_regime: int = 5, backend: Optional[str] = None,
                     materialize: bool = True) -> VerifyReport:
    """Assert g <= alpha <= (4k/3) g on every (graph, k) pair, and check
    every materialized witness cycle."""
    started = time.monotonic()
    graphs = verification_corpus(trials, nmin, nmax, seed, adversarial_per_regime)
    ks = list(ks)
    max_ratio = {k: 0.0 for k in ks}
    violations: List[str] = []
    for gi, graph in enumerate(graphs):
        g = exact_girth(graph)
        for k in ks:
            res = approximate_girth(graph, k, rng_seed=seed + 31 * gi + k,
                                    materialize=materialize, backend=backend)
            alpha = res.alpha
            if g == INF:
                if alpha != INF:
                    violations.append(f"graph {gi}: forest but alpha={alpha}")
                continue
            if alpha < g * (1.0 - REL_TOL):
                violations.append(f"graph {gi} k={k}: alpha={alpha} below girth {g}")
            bound = (4.0 * k / 3.0) * g
            if alpha > bound * (1.0 + REL_TOL):
                violations.append(f"graph {gi} k={k}: alpha={alpha} exceeds bound {bound} (g={g})")
            if alpha < INF:
                max_ratio[k] = max(max_ratio[k], alpha / g)
            if materialize:
                if res.materialized is None:
                    violations.append(f"graph {gi} k={k}: no materialized cycle")
                else:
                    for problem in validate_cycle(graph, res.materialized, alpha):
                        violations.append(f"graph {gi} k={k}: {problem}")
    return VerifyReport(len(graphs), ks, max_ratio, violations,
                        time.monotonic() - started)
