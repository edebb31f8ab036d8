"""Gaussian radial-basis-function interpolation surrogates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.spatial.distance import cdist, pdist, squareform

from .core import BoxBounds

REGULARIZATION = 1e-10
INTERP_TOL = 1e-9
MAX_SHRINK = 40


class SurrogateFitError(RuntimeError):
    pass


@dataclass(frozen=True)
class RbfModel:
    """f(x) = sum_i w_i exp(-||u - c_i||^2 / sigma^2), u = x normalized to ``box``."""

    box: BoxBounds
    centers: np.ndarray
    weights: np.ndarray
    sigma: float
    constant: float | None = None

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.box.d:
            raise ValueError(f"query dimension {X.shape[1]} != model dimension {self.box.d}")
        if self.constant is not None:
            out = np.full(len(X), self.constant)
        else:
            U = self.box.normalize(X)
            out = np.exp(-cdist(U, self.centers, "sqeuclidean") / self.sigma**2) @ self.weights
        return out[0] if single else out


def _dedupe(U, y):
    _, first = np.unique(U, axis=0, return_index=True)
    keep = np.sort(first)
    return U[keep], y[keep]


def _solve(D2, y, sigma):
    n = len(y)
    Phi = np.exp(-D2 / sigma**2)
    lu = sla.lu_factor(Phi + REGULARIZATION * np.eye(n), check_finite=False)
    w = sla.lu_solve(lu, y, check_finite=False)
    # refine against the unregularized system so the model interpolates
    for _ in range(3):
        r = y - Phi @ w
        w = w + sla.lu_solve(lu, r, check_finite=False)
    return w, float(np.max(np.abs(Phi @ w - y)))


def rbf_fit(xs, ys, box: BoxBounds, sigma: float | None = None) -> RbfModel:
    """Fit an interpolating Gaussian RBF in coordinates normalized to ``box``.

    ``sigma`` defaults to the mean pairwise center distance. When that
    width leaves the kernel matrix too ill-conditioned to interpolate to
    ``INTERP_TOL`` (relative to the target scale), the width is shrunk by
    a factor 1.5 until it does.
    """
    X = np.atleast_2d(np.asarray(xs, dtype=float))
    y = np.asarray(ys, dtype=float).reshape(-1)
    if len(X) != len(y):
        raise ValueError("xs and ys differ in length")
    if len(X) == 0:
        raise ValueError("rbf_fit needs at least one sample")
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite training targets")
    U, y = _dedupe(box.normalize(X), y)
    if len(U) == 1:
        return RbfModel(box, U, np.zeros(1), 1.0, constant=float(y[0]))
    d = pdist(U)
    D2 = squareform(d) ** 2
    s = float(sigma) if sigma is not None else float(d.mean())
    tol = INTERP_TOL * max(1.0, float(np.max(np.abs(y))))
    for _ in range(MAX_SHRINK):
        try:
            w, resid = _solve(D2, y, s)
        except (np.linalg.LinAlgError, ValueError):
            resid = np.inf
        if resid <= tol:
            return RbfModel(box, U, w, s)
        s /= 1.5
    raise SurrogateFitError(f"RBF system stayed singular (last residual {resid:.3e}, sigma {s:.3e})")


def rbf_predict(model: RbfModel, x):
    return model.predict(x)
