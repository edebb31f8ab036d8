"""Hypervolume, hypervolume improvement and IGD."""
from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from . import kernels


def _clean(front, z):
    z = np.asarray(z, dtype=float).reshape(-1)
    P = np.asarray(front, dtype=float)
    if P.size == 0:
        return np.empty((0, len(z))), z
    P = np.atleast_2d(P)
    if P.shape[1] != len(z):
        raise ValueError("front and reference point differ in dimension")
    return P[np.all(P < z, axis=1)], z


def hypervolume(front, z) -> float:
    """Exact Lebesgue measure dominated by ``front`` and bounded by ``z``.

    Points that do not strictly dominate ``z`` are ignored.
    """
    P, z = _clean(front, z)
    m = len(z)
    if m not in (2, 3):
        raise ValueError(f"hypervolume supports 2 or 3 objectives, got {m}")
    if len(P) == 0:
        return 0.0
    return kernels.hv2d(P, z) if m == 2 else kernels.hv3d(P, z)


def hv_improvement(front, candidate, z) -> float:
    candidate = np.asarray(candidate, dtype=float).reshape(1, -1)
    P, z = _clean(front, z)
    if not np.all(candidate < z):
        return 0.0
    if len(P) and np.any(np.all(P <= candidate, axis=1)):
        return 0.0
    gain = hypervolume(np.vstack([P, candidate]), z) - hypervolume(P, z)
    return max(gain, 0.0)


def hv_improvements(front, candidates, z) -> np.ndarray:
    return np.array([hv_improvement(front, c, z) for c in np.atleast_2d(candidates)])


def igd(reference, Q) -> float:
    """Mean distance from each reference point to its nearest member of ``Q``."""
    R = np.atleast_2d(np.asarray(reference, dtype=float))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if R.size == 0 or Q.size == 0:
        raise ValueError("igd needs non-empty reference and approximation sets")
    dist, _ = cKDTree(Q).query(R)
    return float(np.mean(dist))


def default_reference_point(front) -> np.ndarray:
    """Nadir plus 10% of the ideal-to-nadir span; zero span falls back to nadir + 1."""
    P = np.atleast_2d(np.asarray(front, dtype=float))
    if P.size == 0:
        raise ValueError("reference point needs a non-empty front")
    nadir = P.max(axis=0)
    ideal = P.min(axis=0)
    span = nadir - ideal
    return np.where(span > 0, nadir + 0.1 * span, nadir + 1.0)
