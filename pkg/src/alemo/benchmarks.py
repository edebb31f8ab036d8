"""DTLZ1-7 and ZDT1-4, ZDT6 with analytic Pareto-front generators.

All problems minimize over [0, 1]^d. Where the printed tables compress a
formula into something that contradicts the stated front geometry, the
standard Deb/Zitzler definitions are used; each such place is marked
"standard form" below.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BoxBounds
from .pareto import nd_ranks

DTLZ = ("DTLZ1", "DTLZ2", "DTLZ3", "DTLZ4", "DTLZ5", "DTLZ6", "DTLZ7")
ZDT = ("ZDT1", "ZDT2", "ZDT3", "ZDT4", "ZDT6")
NAMES = DTLZ + ZDT

DTLZ4_ALPHA = 100.0


def _sphere(theta, g):
    """Spherical mapping shared by DTLZ2-6; ``theta`` in [0, 1]."""
    n, k = theta.shape
    m = k + 1
    F = np.empty((n, m))
    c = np.cos(0.5 * np.pi * theta)
    s = np.sin(0.5 * np.pi * theta)
    for j in range(m):
        f = 1.0 + g
        f = f * np.prod(c[:, : m - 1 - j], axis=1)
        if j > 0:
            f = f * s[:, m - 1 - j]
        F[:, j] = f
    return F


def _g_rastrigin(XM):
    k = XM.shape[1]
    return 100.0 * (k + np.sum((XM - 0.5) ** 2 - np.cos(20.0 * np.pi * (XM - 0.5)), axis=1))


def _g_sphere(XM):
    return np.sum((XM - 0.5) ** 2, axis=1)


def _dtlz(name, X, m):
    pos, XM = X[:, : m - 1], X[:, m - 1 :]
    if name == "DTLZ1":
        g = _g_rastrigin(XM)
        n = len(X)
        F = np.empty((n, m))
        for j in range(m):
            f = 0.5 * (1.0 + g) * np.prod(pos[:, : m - 1 - j], axis=1)
            if j > 0:
                f = f * (1.0 - pos[:, m - 1 - j])
            F[:, j] = f
        return F
    if name == "DTLZ2":
        return _sphere(pos, _g_sphere(XM))
    if name == "DTLZ3":
        return _sphere(pos, _g_rastrigin(XM))
    if name == "DTLZ4":
        # standard form: alpha = 100
        return _sphere(pos**DTLZ4_ALPHA, _g_sphere(XM))
    if name in ("DTLZ5", "DTLZ6"):
        g = _g_sphere(XM) if name == "DTLZ5" else np.sum(XM**0.1, axis=1)
        # standard form: theta_i = (1 + 2 g x_i) / (2 (1 + g)) for i >= 2,
        # used inside cos(pi theta / 2)
        theta = pos.copy()
        if m > 2:
            theta[:, 1:] = (1.0 + 2.0 * g[:, None] * pos[:, 1:]) / (2.0 * (1.0 + g[:, None]))
        return _sphere(theta, g)
    if name == "DTLZ7":
        k = XM.shape[1]
        g = 1.0 + 9.0 / k * np.sum(XM, axis=1)
        F = np.empty((len(X), m))
        F[:, : m - 1] = pos
        h = m - np.sum(pos / (1.0 + g[:, None]) * (1.0 + np.sin(3.0 * np.pi * pos)), axis=1)
        F[:, m - 1] = (1.0 + g) * h
        return F
    raise ValueError(name)


def _zdt(name, X):
    d = X.shape[1]
    x1 = X[:, 0]
    rest = X[:, 1:]
    if name == "ZDT4":
        g = 1.0 + 10.0 * (d - 1) + np.sum(rest**2 - 10.0 * np.cos(4.0 * np.pi * rest), axis=1)
    elif name == "ZDT6":
        g = 1.0 + 9.0 * (np.sum(rest, axis=1) / (d - 1)) ** 0.25
    else:
        g = 1.0 + 9.0 * np.sum(rest, axis=1) / (d - 1)
    if name == "ZDT6":
        f1 = 1.0 - np.exp(-4.0 * x1) * np.sin(6.0 * np.pi * x1) ** 6
    else:
        f1 = x1
    ratio = f1 / g
    if name in ("ZDT1", "ZDT4"):
        # standard form for ZDT4: 1 - sqrt(f1/g) (convex front)
        h = 1.0 - np.sqrt(ratio)
    elif name in ("ZDT2", "ZDT6"):
        # standard form: 1 - (f1/g)^2 (concave front)
        h = 1.0 - ratio**2
    else:
        # standard form for ZDT3
        h = 1.0 - np.sqrt(ratio) - ratio * np.sin(10.0 * np.pi * f1)
    return np.column_stack([f1, g * h])


def nondominated_filter(F) -> np.ndarray:
    """Indices of the unique non-dominated rows of ``F``."""
    F = np.asarray(F, dtype=float)
    _, first = np.unique(F, axis=0, return_index=True)
    idx = np.sort(first)
    sub = F[idx]
    if sub.shape[1] == 2:
        order = np.lexsort((sub[:, 1], sub[:, 0]))
        keep = []
        best = np.inf
        for i in order:
            if sub[i, 1] < best:
                keep.append(i)
                best = sub[i, 1]
        return idx[np.sort(np.asarray(keep, dtype=int))]
    return idx[nd_ranks(sub) == 1]


@dataclass(frozen=True)
class ReferenceFront:
    F: np.ndarray
    X: np.ndarray


@dataclass
class Benchmark:
    """One benchmark instance; satisfies the ``Problem`` protocol."""

    name: str
    d: int = 10
    m: int = 2
    classical_zdt4: bool = False
    bounds: BoxBounds = field(init=False)

    def __post_init__(self):
        self.name = self.name.upper()
        if self.name not in NAMES:
            raise ValueError(f"unknown benchmark {self.name!r}; choose from {', '.join(NAMES)}")
        if self.name in ZDT and self.m != 2:
            raise ValueError("ZDT problems have exactly two objectives")
        if self.m not in (2, 3):
            raise ValueError("benchmarks support m = 2 or 3")
        if self.d < self.m:
            raise ValueError("need d >= m")
        lb = np.zeros(self.d)
        ub = np.ones(self.d)
        if self.name == "ZDT4" and self.classical_zdt4:
            lb[1:] = -5.0
            ub[1:] = 5.0
        self.bounds = BoxBounds(lb, ub)

    def evaluate_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.d:
            raise ValueError(f"expected {self.d} variables, got {X.shape[1]}")
        if not self.bounds.contains(X):
            raise ValueError(f"{self.name}: decision vector outside bounds")
        if self.name in ZDT:
            return _zdt(self.name, X)
        return _dtlz(self.name, X, self.m)

    def evaluate(self, x) -> np.ndarray:
        return self.evaluate_batch(np.asarray(x, dtype=float)[None, :])[0]

    def optimal_decisions(self, n_points: int) -> np.ndarray:
        """Decision vectors on the Pareto set: a grid over position variables."""
        k = 1 if self.name in ZDT else self.m - 1
        if k == 1:
            P = np.linspace(0.0, 1.0, n_points)[:, None]
        else:
            side = int(np.ceil(np.sqrt(n_points)))
            t = np.linspace(0.0, 1.0, side)
            a, b = np.meshgrid(t, t, indexing="ij")
            P = np.column_stack([a.ravel(), b.ravel()])
        if self.name == "DTLZ4":
            # spread points evenly in x^alpha
            P = P ** (1.0 / DTLZ4_ALPHA)
        X = np.empty((len(P), self.d))
        X[:, :k] = P
        if self.name in ("DTLZ1", "DTLZ2", "DTLZ3", "DTLZ4", "DTLZ5"):
            X[:, k:] = 0.5
        else:
            X[:, k:] = 0.0
        return X

    def true_front(self, n_points: int | None = None) -> ReferenceFront:
        if n_points is None:
            n_points = 1000 if self.m == 2 else 5000
        if n_points < 2:
            raise ValueError("need at least two front points")
        X = self.optimal_decisions(n_points)
        F = self.evaluate_batch(X)
        keep = nondominated_filter(F)
        return ReferenceFront(F[keep], X[keep])


def evaluate_benchmark(name: str, x, d: int | None = None, m: int = 2) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return Benchmark(name, d=len(x) if d is None else d, m=m).evaluate(x)


def true_front(name: str, d: int = 10, m: int = 2, n_points: int | None = None) -> ReferenceFront:
    return Benchmark(name, d=d, m=m).true_front(n_points)
