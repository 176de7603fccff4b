"""Immutable weighted undirected graph with length-sorted adjacency.

Edge lengths are strictly positive finite reals.  Each vertex's adjacency
list is sorted by (length, neighbor id), which every downstream consumer
relies on: the lazy exploration pops incident edges in exactly this order.
"""

import math
from typing import Iterable, List, NamedTuple, Sequence, Tuple

INF = float("inf")


class GraphError(ValueError):
    """Invalid graph input (bad edge, malformed file, ...)."""


class EdgeRef(NamedTuple):
    """One orientation of an undirected edge: u is the 'from' endpoint."""

    u: int
    v: int
    length: float
    eid: int

    def reversed(self) -> "EdgeRef":
        return EdgeRef(self.v, self.u, self.length, self.eid)


class WeightedGraph:
    """Undirected graph, immutable after construction.

    Attributes:
        n: vertex count.
        m: edge count.
        edges: list of (u, v, length) with u < v, indexed by edge id.
        adjacency: per vertex, list of (neighbor, length, eid) sorted by
            (length, neighbor).
    """

    __slots__ = ("n", "m", "edges", "adjacency", "_csr")

    def __init__(self, n: int, edges, adjacency):
        self.n = n
        self.m = len(edges)
        self.edges = edges
        self.adjacency = adjacency
        self._csr = None

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def edge_ref(self, eid: int, frm: int) -> EdgeRef:
        u, v, length = self.edges[eid]
        if frm == u:
            return EdgeRef(u, v, length, eid)
        if frm == v:
            return EdgeRef(v, u, length, eid)
        raise ValueError(f"vertex {frm} is not an endpoint of edge {eid}")

    def csr(self):
        """CSR arrays (indptr, nbr, length, eid) for the compiled kernels."""
        if self._csr is None:
            import numpy as np

            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for u in range(self.n):
                indptr[u + 1] = indptr[u] + len(self.adjacency[u])
            total = int(indptr[self.n])
            nbr = np.empty(total, dtype=np.int32)
            lengths = np.empty(total, dtype=np.float64)
            eids = np.empty(total, dtype=np.int32)
            pos = 0
            for u in range(self.n):
                for v, w, e in self.adjacency[u]:
                    nbr[pos] = v
                    lengths[pos] = w
                    eids[pos] = e
                    pos += 1
            self._csr = (indptr, nbr, lengths, eids)
        return self._csr


def build_graph(
    n: int,
    edge_list: Iterable[Tuple[int, int, float]],
    _allow_zero_lengths: bool = False,
) -> WeightedGraph:
    """Validate and build a WeightedGraph from (u, v, length) triples.

    Rejects self-loops, duplicate undirected edges, non-positive lengths,
    and out-of-range vertex ids; the offending edge is named in the error.

    _allow_zero_lengths is internal plumbing for the planted-instance
    analysis mode; it is not part of the public contract.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    edges: List[Tuple[int, int, float]] = []
    seen = set()
    adjacency: List[List[Tuple[int, float, int]]] = [[] for _ in range(n)]
    for eid, (u, v, length) in enumerate(edge_list):
        if not (0 <= u < n) or not (0 <= v < n):
            raise GraphError(f"edge ({u}, {v}, {length}): vertex id out of range [0, {n})")
        if u == v:
            raise GraphError(f"edge ({u}, {v}, {length}): self-loop")
        length = float(length)
        if not math.isfinite(length):
            raise GraphError(f"edge ({u}, {v}, {length}): length must be finite")
        if length < 0.0 or (length == 0.0 and not _allow_zero_lengths):
            raise GraphError(f"edge ({u}, {v}, {length}): length must be positive")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"edge ({u}, {v}, {length}): duplicate undirected edge")
        seen.add(key)
        edges.append((key[0], key[1], length))
        adjacency[u].append((v, length, eid))
        adjacency[v].append((u, length, eid))
    for u in range(n):
        adjacency[u].sort(key=lambda t: (t[1], t[0]))
    return WeightedGraph(n, edges, adjacency)


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse the edge-list format.

    Optional header `p <n> <m>`, then one `u v length` per line; lines
    starting with `#` are comments.  Without a header, n is inferred as
    max vertex id + 1.
    """
    header = None
    triples: List[Tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if triples:
                raise GraphError(f"line {lineno}: header must precede edges")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: header must be 'p <n> <m>'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphError(f"line {lineno}: header must be 'p <n> <m>'") from None
            continue
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v length', got {raw!r}")
        try:
            u = int(parts[0])
            v = int(parts[1])
            length = float(parts[2])
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v length', got {raw!r}") from None
        triples.append((u, v, length))
    if header is not None:
        n, m = header
        if m != len(triples):
            raise GraphError(f"header declares {m} edges but file has {len(triples)}")
    else:
        n = 1 + max((max(u, v) for u, v, _ in triples), default=-1)
    return build_graph(n, triples)


def serialize_edge_list(graph: WeightedGraph) -> str:
    """Serialize with header, edges sorted by (u, v).  repr() keeps floats
    round-trippable through parse_edge_list."""
    lines = [f"p {graph.n} {graph.m}"]
    for u, v, length in sorted(graph.edges):
        lines.append(f"{u} {v} {length!r}")
    return "\n".join(lines) + "\n"


def load_graph(path) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def save_graph(graph: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(graph))


def connected_components(graph: WeightedGraph) -> List[List[int]]:
    seen = [False] * graph.n
    out = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _, _ in graph.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def is_connected(graph: WeightedGraph) -> bool:
    if graph.n <= 1:
        return True
    return len(connected_components(graph)) == 1
