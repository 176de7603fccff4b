"""Small timing harness comparing the pure-Python and compiled backends
on identical inputs.  Timings go to stderr so stdout stays parseable."""

import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ._backend import HAVE_FAST
from .approx import approximate_girth
from .generators import gnm


@dataclass
class BenchRow:
    n: int
    m: int
    k: int
    backend: str
    parallel: bool
    seconds: float
    alpha: float


def run_bench(sizes: Sequence[int], k: int = 2, seed: int = 0, avg_degree: float = 6.0,
              repeat: int = 1, backends: Optional[Sequence[str]] = None,
              parallel: bool = False) -> List[BenchRow]:
    if backends is None:
        backends = ["pure", "fast"] if HAVE_FAST else ["pure"]
    rows = []
    for n in sizes:
        m = int(n * avg_degree / 2)
        graph = gnm(n, m, 0.0, 1.0, seed + n)
        for backend in backends:
            best = None
            alpha = float("inf")
            for _ in range(max(1, repeat)):
                t0 = time.perf_counter()
                res = approximate_girth(graph, k, rng_seed=seed, backend=backend,
                                        parallel=parallel)
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
                alpha = res.alpha
            rows.append(BenchRow(n, graph.m, k, backend, parallel, best, alpha))
    return rows


def format_rows(rows: Sequence[BenchRow]) -> str:
    lines = [f"{'n':>8} {'m':>9} {'k':>2} {'backend':>8} {'par':>4} {'seconds':>10} {'alpha':>12}"]
    for r in rows:
        lines.append(f"{r.n:>8} {r.m:>9} {r.k:>2} {r.backend:>8} "
                     f"{'yes' if r.parallel else 'no':>4} {r.seconds:>10.4f} {r.alpha:>12.6g}")
    return "\n".join(lines)
