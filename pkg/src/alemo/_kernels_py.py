"""Pure numpy implementations of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def nd_ranks(F):
    """Pareto rank of every row of ``F`` (1 = non-dominated)."""
    F = np.asarray(F, dtype=float)
    n = len(F)
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt
    count = dom.sum(axis=0)
    rank = np.zeros(n, dtype=np.int64)
    current = np.flatnonzero(count == 0)
    r = 1
    while current.size:
        rank[current] = r
        count = count - dom[current].sum(axis=0)
        count[current] = -1
        current = np.flatnonzero(count == 0)
        r += 1
    return rank


def _sweep2d(P, z0, z1):
    order = np.lexsort((P[:, 1], P[:, 0]))
    cur = z1
    area = 0.0
    for i in order:
        if P[i, 1] < cur:
            area += (z0 - P[i, 0]) * (cur - P[i, 1])
            cur = P[i, 1]
    return area


def hv2d(P, z):
    P = np.asarray(P, dtype=float)
    if len(P) == 0:
        return 0.0
    return float(_sweep2d(P, z[0], z[1]))


def hv3d(P, z):
    P = np.asarray(P, dtype=float)
    n = len(P)
    if n == 0:
        return 0.0
    zorder = np.argsort(P[:, 2], kind="stable")
    vol = 0.0
    for t in range(n):
        i = zorder[t]
        top = z[2] if t == n - 1 else P[zorder[t + 1], 2]
        if top <= P[i, 2]:
            continue
        vol += _sweep2d(P[zorder[: t + 1]], z[0], z[1]) * (top - P[i, 2])
    return float(vol)
