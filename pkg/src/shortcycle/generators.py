"""Graph generators: random models, grids, and small named graphs whose
girth is known.  All randomness flows from an explicit seed."""

from typing import List, Optional, Tuple

import numpy as np

from .graph import WeightedGraph, build_graph, is_connected

# Lengths are drawn as hi - U[0,1)*(hi-lo), i.e. from (lo, hi]: never zero
# even with lo == 0.


def _lengths(rng, count: int, wmin: float, wmax: float) -> np.ndarray:
    if not (0.0 <= wmin <= wmax) or wmax <= 0:
        raise ValueError(f"invalid length range [{wmin}, {wmax}]")
    return wmax - rng.random(count) * (wmax - wmin)


def gnp(n: int, p: float, wmin: float, wmax: float, seed: int) -> WeightedGraph:
    """G(n,p) with lengths in (wmin, wmax].

    The edge set is drawn as a binomial count plus a uniform sample of
    distinct vertex pairs, which matches the independent-coin model and
    stays cheap when p is small.
    """
    if n < 0 or not (0.0 <= p <= 1.0):
        raise ValueError(f"invalid gnp parameters n={n} p={p}")
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    count = int(rng.binomial(total, p)) if total else 0
    chosen = set()
    while len(chosen) < count:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u != v:
            chosen.add((u, v) if u < v else (v, u))
    pairs = sorted(chosen)
    lengths = _lengths(rng, len(pairs), wmin, wmax)
    return build_graph(n, [(u, v, float(w)) for (u, v), w in zip(pairs, lengths)])


def gnm(n: int, m: int, wmin: float, wmax: float, seed: int) -> WeightedGraph:
    """Exactly m distinct random edges; the sparse workhorse for scale runs."""
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds the {total} possible edges")
    rng = np.random.default_rng(seed)
    chosen = set()
    while len(chosen) < m:
        need = m - len(chosen)
        us = rng.integers(0, n, size=2 * need + 8)
        vs = rng.integers(0, n, size=2 * need + 8)
        for u, v in zip(us, vs):
            if u != v:
                chosen.add((int(u), int(v)) if u < v else (int(v), int(u)))
                if len(chosen) == m:
                    break
    pairs = sorted(chosen)
    lengths = _lengths(rng, m, wmin, wmax)
    return build_graph(n, [(u, v, float(w)) for (u, v), w in zip(pairs, lengths)])


def connected_gnp(n: int, p: float, wmin: float, wmax: float, seed: int,
                  max_tries: int = 200) -> WeightedGraph:
    """Retry gnp with derived sub-seeds until the sample is connected."""
    ss = np.random.SeedSequence(seed)
    for child in ss.spawn(max_tries):
        g = gnp(n, p, wmin, wmax, child.generate_state(1)[0])
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected G({n},{p}) sample in {max_tries} tries")


def grid(rows: int, cols: int, wmin: float, wmax: float, seed: int) -> WeightedGraph:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs rows >= 1 and cols >= 1")
    rng = np.random.default_rng(seed)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    lengths = _lengths(rng, len(edges), wmin, wmax)
    return build_graph(rows * cols, [(u, v, float(w)) for (u, v), w in zip(edges, lengths)])


_PETERSEN = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]

# Heawood graph via its LCF notation [5,-5]^7 on a 14-cycle
def _heawood_pairs() -> List[Tuple[int, int]]:
    pairs = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        a, b = i, (i + 5) % 14
        pairs.append((a, b) if a < b else (b, a))
    return sorted(set(tuple(sorted(p)) for p in pairs))


NAMED_GRAPHS = ("petersen", "heawood", "k33", "cycle")


def named(name: str, g: Optional[int] = None) -> WeightedGraph:
    """Known small graphs with unit lengths: petersen (girth 5), heawood
    (girth 6), k33 (girth 4), cycle (girth g, default 8)."""
    name = name.lower()
    if name == "petersen":
        pairs = _PETERSEN
        n = 10
    elif name == "heawood":
        pairs = _heawood_pairs()
        n = 14
    elif name == "k33":
        pairs = [(a, b) for a in range(3) for b in range(3, 6)]
        n = 6
    elif name == "cycle":
        length = g if g is not None else 8
        if length < 3:
            raise ValueError("cycle needs g >= 3")
        pairs = [(i, (i + 1) % length) for i in range(length)]
        n = length
    else:
        raise ValueError(f"unknown named graph {name!r}")
    return build_graph(n, [(u, v, 1.0) for u, v in sorted(tuple(sorted(p)) for p in pairs)])


def _with_background(edges, girth: float, base: int, n_extra: int, rng) -> List[Tuple[int, int, float]]:
    """Bridge the planted gadget on vertices [0, base) to a random connected
    background whose edges are all >= 4x the planted girth.  The bridge is a
    cut edge, so the planted cycle stays the unique shortest one."""
    n = base + n_extra
    floor = 4.0 * girth
    taken = set()
    for v in range(base + 1, n):
        u = int(rng.integers(base, v))
        taken.add((u, v))
        edges.append((u, v, float(floor + rng.random())))
    if n_extra:
        edges.append((0, base, float(floor + rng.random())))  # the bridge
        for _ in range(max(1, n_extra // 2)):
            a = int(rng.integers(base, n))
            b = int(rng.integers(base, n))
            pair = (min(a, b), max(a, b))
            if a != b and pair not in taken:
                taken.add(pair)
                edges.append((pair[0], pair[1], float(floor + rng.random())))
    return edges


def planted_small_max_edge(n_extra: int, seed: int) -> WeightedGraph:
    """Shortest cycle has many equal small edges: max edge <= girth/3.

    A 6-cycle of 0.125-length edges gives girth 0.75 with max cycle edge
    g/6; no background or mixed cycle can compete.
    """
    rng = np.random.default_rng(seed)
    cyc = 6
    edges = [(i, (i + 1) % cyc, 0.125) for i in range(cyc)]
    return build_graph(cyc + n_extra, _with_background(edges, 0.75, cyc, n_extra, rng))


def planted_heavy_edge(n_extra: int, seed: int) -> WeightedGraph:
    """Shortest cycle has one dominant edge: max edge > girth/3.

    Four 0.1-length path edges closed by a unit edge give girth 1.4 with
    max edge 1.0.
    """
    rng = np.random.default_rng(seed)
    edges = [(0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (3, 4, 0.1), (4, 0, 1.0)]
    return build_graph(5 + n_extra, _with_background(edges, 1.4, 5, n_extra, rng))


def random_unit_graph(n: int, p: float, seed: int) -> WeightedGraph:
    """gnp with every length 1; used to grow planting bases."""
    g = gnp(n, p, 1.0, 1.0, seed)
    return build_graph(n, [(u, v, 1.0) for u, v, _ in g.edges])
