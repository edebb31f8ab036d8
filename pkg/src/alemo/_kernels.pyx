# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: non-dominated ranking and exact 2-D/3-D hypervolume.

Every function here has a numpy twin in ``_kernels_py`` with the same
signature and semantics; ``alemo.kernels`` picks one at import time.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def nd_ranks(const double[:, ::1] F):
    """Pareto rank of every row of ``F`` (1 = non-dominated)."""
    cdef Py_ssize_t n = F.shape[0]
    cdef Py_ssize_t m = F.shape[1]
    cdef Py_ssize_t i, j, k, head, tail, nxt
    cdef bint i_better, j_better
    cdef double a, b

    dom_np = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] dom = dom_np
    count_np = np.zeros(n, dtype=np.int64)
    cdef long long[::1] count = count_np
    rank_np = np.zeros(n, dtype=np.int64)
    cdef long long[::1] rank = rank_np
    queue_np = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] queue = queue_np

    for i in range(n):
        for j in range(i + 1, n):
            i_better = False
            j_better = False
            for k in range(m):
                a = F[i, k]
                b = F[j, k]
                if a < b:
                    i_better = True
                elif b < a:
                    j_better = True
                if i_better and j_better:
                    break
            if i_better and not j_better:
                dom[i, j] = 1
                count[j] += 1
            elif j_better and not i_better:
                dom[j, i] = 1
                count[i] += 1

    tail = 0
    for i in range(n):
        if count[i] == 0:
            rank[i] = 1
            queue[tail] = i
            tail += 1
    head = 0
    while head < tail:
        i = queue[head]
        head += 1
        for j in range(n):
            if dom[i, j]:
                count[j] -= 1
                if count[j] == 0:
                    rank[j] = rank[i] + 1
                    queue[tail] = j
                    tail += 1
    return rank_np


cdef double _sweep2d(const double[:, ::1] P, Py_ssize_t[::1] order, unsigned char[::1] active,
                     double z0, double z1):
    # order sorts P by first objective, then second
    cdef Py_ssize_t t, i
    cdef double cur = z1
    cdef double area = 0.0
    for t in range(order.shape[0]):
        i = order[t]
        if not active[i]:
            continue
        if P[i, 1] < cur:
            area += (z0 - P[i, 0]) * (cur - P[i, 1])
            cur = P[i, 1]
    return area


def hv2d(const double[:, ::1] P, const double[::1] z):
    """Exact area dominated by ``P`` inside the box bounded by ``z``.

    All rows must strictly dominate ``z``.
    """
    cdef Py_ssize_t n = P.shape[0]
    if n == 0:
        return 0.0
    order = np.lexsort((np.asarray(P[:, 1]), np.asarray(P[:, 0]))).astype(np.intp)
    active = np.ones(n, dtype=np.uint8)
    return _sweep2d(P, order, active, z[0], z[1])


def hv3d(const double[:, ::1] P, const double[::1] z):
    """Exact volume by slicing along the third objective."""
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t t, i
    cdef double vol = 0.0
    cdef double top, area
    if n == 0:
        return 0.0
    order_np = np.lexsort((np.asarray(P[:, 1]), np.asarray(P[:, 0]))).astype(np.intp)
    cdef Py_ssize_t[::1] order = order_np
    by_z = np.argsort(np.asarray(P[:, 2]), kind="stable").astype(np.intp)
    cdef Py_ssize_t[::1] zorder = by_z
    active_np = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] active = active_np
    for t in range(n):
        i = zorder[t]
        active[i] = 1
        top = z[2] if t == n - 1 else P[zorder[t + 1], 2]
        if top <= P[i, 2]:
            continue
        area = _sweep2d(P, order, active, z[0], z[1])
        vol += area * (top - P[i, 2])
    return vol
