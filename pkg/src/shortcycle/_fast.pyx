# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
# distutils: language = c++
"""Compiled twin of the pure-Python pipeline kernels.

Every loop mirrors its pure counterpart statement for statement: identical
float arithmetic, identical lexicographic tie-breaking, identical counter
semantics.  The test suite asserts bit-equal results between the two, so
any deviation here is a bug even when it is "just" a different but valid
shortest path.
"""

import numpy as np

from libcpp.vector cimport vector
from libc.math cimport INFINITY


# ---------------------------------------------------------------------------
# hand-rolled binary min-heaps
#
# Entries are totally ordered (the int fields make distinct entries never
# compare equal), so the popped sequence matches heapq on the same pushes.

cdef struct DE:          # multi-source Dijkstra entry: (dist, pivot, vertex)
    double d
    int p
    int x

cdef inline bint de_less(DE a, DE b) noexcept nogil:
    if a.d != b.d:
        return a.d < b.d
    if a.p != b.p:
        return a.p < b.p
    return a.x < b.x

cdef inline void de_push(vector[DE]& h, DE e) noexcept nogil:
    cdef size_t i = h.size()
    cdef size_t par
    cdef DE tmp
    h.push_back(e)
    while i > 0:
        par = (i - 1) >> 1
        if de_less(h[i], h[par]):
            tmp = h[par]; h[par] = h[i]; h[i] = tmp
            i = par
        else:
            break

cdef inline DE de_pop(vector[DE]& h) noexcept nogil:
    cdef DE top = h[0]
    cdef size_t size = h.size() - 1
    cdef size_t i = 0, l, r, small
    cdef DE tmp
    h[0] = h[size]
    h.pop_back()
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        r = l + 1
        small = l
        if r < size and de_less(h[r], h[l]):
            small = r
        if de_less(h[small], h[i]):
            tmp = h[i]; h[i] = h[small]; h[small] = tmp
            i = small
        else:
            break
    return top


cdef struct QE:          # explorer entry: (key, eid, frm, to)
    double key
    int eid
    int frm
    int to

cdef inline bint qe_less(QE a, QE b) noexcept nogil:
    if a.key != b.key:
        return a.key < b.key
    if a.eid != b.eid:
        return a.eid < b.eid
    if a.frm != b.frm:
        return a.frm < b.frm
    return a.to < b.to

cdef inline void qe_push(vector[QE]& h, QE e) noexcept nogil:
    cdef size_t i = h.size()
    cdef size_t par
    cdef QE tmp
    h.push_back(e)
    while i > 0:
        par = (i - 1) >> 1
        if qe_less(h[i], h[par]):
            tmp = h[par]; h[par] = h[i]; h[i] = tmp
            i = par
        else:
            break

cdef inline QE qe_pop(vector[QE]& h) noexcept nogil:
    cdef QE top = h[0]
    cdef size_t size = h.size() - 1
    cdef size_t i = 0, l, r, small
    cdef QE tmp
    h[0] = h[size]
    h.pop_back()
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        r = l + 1
        small = l
        if r < size and qe_less(h[r], h[l]):
            small = r
        if qe_less(h[small], h[i]):
            tmp = h[i]; h[i] = h[small]; h[small] = tmp
            i = small
        else:
            break
    return top


# ---------------------------------------------------------------------------
# vector -> numpy copies

cdef object _ivec(vector[int]& v):
    out = np.empty(v.size(), dtype=np.int32)
    cdef int[::1] mv = out
    cdef size_t i
    for i in range(v.size()):
        mv[i] = v[i]
    return out

cdef object _llvec(vector[long long]& v):
    out = np.empty(v.size(), dtype=np.int64)
    cdef long long[::1] mv = out
    cdef size_t i
    for i in range(v.size()):
        mv[i] = v[i]
    return out

cdef object _dvec(vector[double]& v):
    out = np.empty(v.size(), dtype=np.float64)
    cdef double[::1] mv = out
    cdef size_t i
    for i in range(v.size()):
        mv[i] = v[i]
    return out


# ---------------------------------------------------------------------------
# level distances

def multi_source_dijkstra(long long[::1] indptr, int[::1] nbr, double[::1] wts,
                          int[::1] eids, int[::1] sources,
                          double[::1] dist, int[::1] piv, int[::1] parv,
                          int[::1] pareid):
    """Fill one level's (dist, piv, parv, pareid) rows in place.

    Caller prefills dist with +inf and the int rows with -1; sources must
    be sorted ascending.  Relaxation is lexicographic on (dist, pivot) so
    equidistant sources resolve toward the smaller id.
    """
    cdef vector[DE] heap
    cdef DE e, ne
    cdef long long j
    cdef int s, x, y
    cdef double nd
    cdef Py_ssize_t si
    for si in range(sources.shape[0]):
        s = sources[si]
        dist[s] = 0.0
        piv[s] = s
        e.d = 0.0; e.p = s; e.x = s
        de_push(heap, e)
    with nogil:
        while heap.size() > 0:
            e = de_pop(heap)
            x = e.x
            if e.d != dist[x] or e.p != piv[x]:
                continue
            for j in range(indptr[x], indptr[x + 1]):
                y = nbr[j]
                nd = e.d + wts[j]
                if nd < dist[y] or (nd == dist[y] and e.p < piv[y]):
                    dist[y] = nd
                    piv[y] = e.p
                    parv[y] = x
                    pareid[y] = eids[j]
                    ne.d = nd; ne.p = e.p; ne.x = y
                    de_push(heap, ne)


# ---------------------------------------------------------------------------
# range trees

def build_trees(long long[::1] offs, long long[::1] caps,
                long long[::1] indptr, int[::1] nbr, double[::1] wts,
                double[:, ::1] dist_rows, double[:, ::1] trees,
                int k, int n):
    """Fill all per-(vertex, level) min trees: leaves hold the shifted
    lengths (top level: -inf), pads +inf, internal nodes subtree minima."""
    cdef int i, v
    cdef long long base, cap, deg, j, node
    cdef double y, l, r
    with nogil:
        for i in range(k):
            for v in range(n):
                base = offs[v]
                cap = caps[v]
                deg = indptr[v + 1] - indptr[v]
                for j in range(deg):
                    if i == k - 1:
                        y = -INFINITY
                    else:
                        y = wts[indptr[v] + j] - dist_rows[i + 1, nbr[indptr[v] + j]]
                    trees[i, base + cap + j] = y
                for j in range(deg, cap):
                    trees[i, base + cap + j] = INFINITY
                for node in range(cap - 1, 0, -1):
                    l = trees[i, base + 2 * node]
                    r = trees[i, base + 2 * node + 1]
                    trees[i, base + node] = l if l <= r else r


# ---------------------------------------------------------------------------
# cluster exploration

cdef inline long long _next_leaf(double[:, ::1] trees, int lvl, long long base,
                                 long long cap, long long from_leaf,
                                 double y0) noexcept nogil:
    # smallest leaf index >= from_leaf with y < y0, or -1
    cdef long long node
    if from_leaf >= cap:
        return -1
    node = cap + from_leaf
    if trees[lvl, base + node] < y0:
        return from_leaf
    while True:
        while node & 1:
            node >>= 1
        if node == 0:
            return -1
        node += 1
        if trees[lvl, base + node] < y0:
            while node < cap:
                if trees[lvl, base + 2 * node] < y0:
                    node = 2 * node
                else:
                    node = 2 * node + 1
            return node - cap


cdef inline long long _relax(int x, long long ep, int lvl,
                             long long[::1] indptr, int[::1] nbr,
                             double[::1] wts, int[::1] eids,
                             double[:, ::1] trees, long long[::1] offs,
                             long long[::1] caps, double[::1] dist_loc,
                             long long[::1] cur_ep, long long[::1] cur_leaf,
                             unsigned char[::1] cur_exh,
                             int[::1] par_eid, long long* skp,
                             vector[QE]& queue) noexcept nogil:
    # push x's next eligible incident edge; returns 1 on push, 0 otherwise.
    # x's own tree edge surfacing from below is passed over (at most once
    # per cursor), so only cycle-closing edges ever reach a visited vertex.
    cdef long long base, cap, deg, leaf, j
    cdef double y0
    cdef QE e
    if cur_ep[x] != ep:
        cur_ep[x] = ep
        cur_leaf[x] = 0
        cur_exh[x] = 0
        if trees[lvl, offs[x] + 1] >= -dist_loc[x]:
            cur_exh[x] = 1
    if cur_exh[x]:
        return 0
    base = offs[x]
    cap = caps[x]
    deg = indptr[x + 1] - indptr[x]
    y0 = -dist_loc[x]
    leaf = _next_leaf(trees, lvl, base, cap, cur_leaf[x], y0)
    if leaf < 0 or leaf >= deg:
        cur_exh[x] = 1
        return 0
    cur_leaf[x] = leaf + 1
    j = indptr[x] + leaf
    if eids[j] == par_eid[x]:
        skp[0] += 1
        leaf = _next_leaf(trees, lvl, base, cap, cur_leaf[x], y0)
        if leaf < 0 or leaf >= deg:
            cur_exh[x] = 1
            return 0
        cur_leaf[x] = leaf + 1
        j = indptr[x] + leaf
    e.key = dist_loc[x] + wts[j]
    e.eid = eids[j]
    e.frm = x
    e.to = nbr[j]
    qe_push(queue, e)
    return 1


def explore_range(int lo, int hi,
                  long long[::1] indptr, int[::1] nbr, double[::1] wts,
                  int[::1] eids, double[::1] ew, int[::1] a_level,
                  double[:, ::1] trees, long long[::1] offs, long long[::1] caps,
                  int n):
    """Run the lazy cluster exploration for every center in [lo, hi).

    Returns (insertions, skips, pops, member_counts, row_x, row_d, row_frm,
    row_eid, wit_center, wit_v, wit_w, wit_eid, wit_bound).  Rows are the
    store writes in finalize order, grouped by ascending center; the wit_*
    arrays hold the early-stop cycle of each center that found one.
    Shared inputs are read-only and scratch is call-local, so concurrent
    calls on disjoint ranges are safe.
    """
    cdef double[::1] dist_loc = np.empty(n, dtype=np.float64)
    cdef int[::1] par_frm = np.empty(n, dtype=np.int32)
    cdef int[::1] par_eid = np.empty(n, dtype=np.int32)
    cdef long long[::1] vis_ep = np.zeros(n, dtype=np.int64)
    cdef long long[::1] cur_ep = np.zeros(n, dtype=np.int64)
    cdef long long[::1] cur_leaf = np.zeros(n, dtype=np.int64)
    cdef unsigned char[::1] cur_exh = np.zeros(n, dtype=np.uint8)

    cdef vector[QE] queue
    cdef vector[long long] mem_cnt
    cdef vector[int] row_x, row_frm, row_eid
    cdef vector[double] row_d
    cdef vector[int] wit_center, wit_v, wit_w, wit_eid
    cdef vector[double] wit_bound

    cdef long long insertions = 0, skips = 0, pops = 0
    cdef long long ep, members
    cdef int c, lvl, a, b
    cdef double bound
    cdef QE e

    with nogil:
        for c in range(lo, hi):
            ep = c + 1
            lvl = a_level[c]
            queue.clear()
            dist_loc[c] = 0.0
            par_frm[c] = -1
            par_eid[c] = -1
            vis_ep[c] = ep
            row_x.push_back(c)
            row_d.push_back(0.0)
            row_frm.push_back(-1)
            row_eid.push_back(-1)
            members = 1
            insertions += _relax(c, ep, lvl, indptr, nbr, wts, eids, trees,
                                 offs, caps, dist_loc, cur_ep, cur_leaf,
                                 cur_exh, par_eid, &skips, queue)

            while queue.size() > 0:
                e = qe_pop(queue)
                pops += 1
                a = e.frm
                b = e.to
                if vis_ep[b] != ep:
                    dist_loc[b] = e.key
                    par_frm[b] = a
                    par_eid[b] = e.eid
                    vis_ep[b] = ep
                    row_x.push_back(b)
                    row_d.push_back(e.key)
                    row_frm.push_back(a)
                    row_eid.push_back(e.eid)
                    members += 1
                    insertions += _relax(a, ep, lvl, indptr, nbr, wts, eids,
                                         trees, offs, caps, dist_loc, cur_ep,
                                         cur_leaf, cur_exh, par_eid, &skips,
                                         queue)
                    insertions += _relax(b, ep, lvl, indptr, nbr, wts, eids,
                                         trees, offs, caps, dist_loc, cur_ep,
                                         cur_leaf, cur_exh, par_eid, &skips,
                                         queue)
                    continue
                if par_eid[a] == e.eid:
                    # unreachable while _relax filters the parent edge; kept
                    # so eligibility changes cannot fake a witness
                    skips += 1
                    insertions += _relax(a, ep, lvl, indptr, nbr, wts, eids,
                                         trees, offs, caps, dist_loc, cur_ep,
                                         cur_leaf, cur_exh, par_eid, &skips,
                                         queue)
                    continue
                # genuine cycle: stop this center immediately
                bound = dist_loc[a] + ew[e.eid] + dist_loc[b]
                wit_center.push_back(c)
                wit_v.push_back(a)
                wit_w.push_back(b)
                wit_eid.push_back(e.eid)
                wit_bound.push_back(bound)
                break
            mem_cnt.push_back(members)

    return (int(insertions), int(skips), int(pops), _llvec(mem_cnt),
            _ivec(row_x), _dvec(row_d), _ivec(row_frm), _ivec(row_eid),
            _ivec(wit_center), _ivec(wit_v), _ivec(wit_w), _ivec(wit_eid),
            _dvec(wit_bound))


# ---------------------------------------------------------------------------
# edge scan

cdef inline double _get_d(int u, int v, long long[::1] center_ptr, int[::1] srt_x,
                          double[::1] srt_d, int[:, ::1] piv,
                          double[:, ::1] dist_rows, int k) noexcept nogil:
    cdef long long lo = center_ptr[u], hi = center_ptr[u + 1], mid
    cdef int i
    while lo < hi:
        mid = (lo + hi) >> 1
        if srt_x[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    if lo < center_ptr[u + 1] and srt_x[lo] == v:
        return srt_d[lo]
    for i in range(k - 1, -1, -1):
        if piv[i, v] == u:
            return dist_rows[i, v]
    return INFINITY

cdef inline int _get_pi_eid(int u, int v, long long[::1] center_ptr, int[::1] srt_x,
                            int[::1] srt_eid, int[:, ::1] piv,
                            int[:, ::1] pareid, int k) noexcept nogil:
    cdef long long lo = center_ptr[u], hi = center_ptr[u + 1], mid
    cdef int i
    while lo < hi:
        mid = (lo + hi) >> 1
        if srt_x[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    if lo < center_ptr[u + 1] and srt_x[lo] == v:
        return srt_eid[lo]
    for i in range(k - 1, -1, -1):
        if piv[i, v] == u:
            return pareid[i, v]
    return -1


def edge_scan(int m, int k, int[::1] eu, int[::1] ev, double[::1] ew,
              int[:, ::1] piv, int[:, ::1] pareid, double[:, ::1] dist_rows,
              long long[::1] center_ptr, int[::1] srt_x, double[::1] srt_d,
              int[::1] srt_eid, double alpha0):
    """Scan edge ids ascending, both orientations, levels ascending;
    returns (alpha, wit_u, wit_v, wit_w, wit_eid, trace) where wit_eid is
    -1 when no candidate improved on alpha0."""
    cdef vector[double] trace
    cdef double alpha = alpha0, cand, length
    cdef int wu = -1, wv = -1, ww = -1, weid = -1
    cdef int eid, o, i, u, v, w, a, b
    with nogil:
        for eid in range(m):
            a = eu[eid]
            b = ev[eid]
            length = ew[eid]
            for o in range(2):
                if o == 0:
                    v = a; w = b
                else:
                    v = b; w = a
                for i in range(k):
                    u = piv[i, v]
                    if u < 0:
                        continue
                    cand = (_get_d(u, v, center_ptr, srt_x, srt_d, piv, dist_rows, k)
                            + length
                            + _get_d(u, w, center_ptr, srt_x, srt_d, piv, dist_rows, k))
                    if cand < alpha:
                        if _get_pi_eid(u, v, center_ptr, srt_x, srt_eid, piv, pareid, k) == eid:
                            continue
                        if _get_pi_eid(u, w, center_ptr, srt_x, srt_eid, piv, pareid, k) == eid:
                            continue
                        alpha = cand
                        wu = u; wv = v; ww = w; weid = eid
                        trace.push_back(cand)
    return alpha, wu, wv, ww, weid, _dvec(trace)
