"""Offspring generation: DE-style mutations, binomial crossover, polynomial mutation.

All operators accept a single vector or a 2-D batch (one row per
individual) and never repair bounds unless stated.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoxBounds, EvaluatedSample, as_generator
from .pareto import dominates


@dataclass(frozen=True)
class VariationParams:
    Mu: float = 0.5
    CR: float = 0.8
    eta_m: float = 20.0
    # "1/d" means one expected mutated variable per offspring
    pm: float | str = "1/d"

    def __post_init__(self):
        if not 0.0 <= self.CR <= 1.0:
            raise ValueError("CR must lie in [0, 1]")
        if self.eta_m <= 0:
            raise ValueError("eta_m must be positive")
        if not isinstance(self.pm, str) and not 0.0 <= self.pm <= 1.0:
            raise ValueError("pm must lie in [0, 1]")
        if isinstance(self.pm, str) and self.pm != "1/d":
            raise ValueError("pm must be a probability or the string '1/d'")

    def mutation_probability(self, d: int) -> float:
        return 1.0 / d if self.pm == "1/d" else float(self.pm)


def _same_shape(*arrays):
    shapes = {np.shape(a) for a in arrays}
    if len(shapes) != 1:
        raise ValueError(f"operand shapes differ: {sorted(shapes)}")


def rank_based_mutation(x_rI, x_rII, Mu: float) -> np.ndarray:
    """Step from a second-front solution through a first-front one: x_rI + Mu (x_rI - x_rII)."""
    x_rI = np.asarray(x_rI, dtype=float)
    x_rII = np.asarray(x_rII, dtype=float)
    _same_shape(x_rI, x_rII)
    return x_rI + Mu * (x_rI - x_rII)


def de_best_mutation(x_best, x_r1, x_r2, Mu: float) -> np.ndarray:
    x_best = np.asarray(x_best, dtype=float)
    x_r1 = np.asarray(x_r1, dtype=float)
    x_r2 = np.asarray(x_r2, dtype=float)
    _same_shape(x_best, x_r1, x_r2)
    return x_best + Mu * (x_r1 - x_r2)


def binomial_crossover(x, v, CR: float, stream) -> np.ndarray:
    """Take each gene from ``v`` with probability CR; one random gene always comes from ``v``."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    _same_shape(x, v)
    rng = as_generator(stream)
    X = np.atleast_2d(x)
    V = np.atleast_2d(v)
    n, d = X.shape
    take = rng.random((n, d)) <= CR
    take[np.arange(n), rng.integers(0, d, size=n)] = True
    U = np.where(take, V, X)
    return U.reshape(x.shape)


def polynomial_mutation(x, bounds: BoxBounds, eta_m: float, pm: float, stream) -> np.ndarray:
    """Bounded polynomial mutation; output stays inside ``bounds``."""
    x = np.asarray(x, dtype=float)
    if not bounds.contains(x):
        raise ValueError("polynomial_mutation requires x inside the bounds")
    rng = as_generator(stream)
    X = np.atleast_2d(x).copy()
    n, d = X.shape
    lb, ub = bounds.lb, bounds.ub
    span = ub - lb
    mutate = rng.random((n, d)) < pm
    r = rng.random((n, d))
    if not mutate.any():
        return X.reshape(x.shape)
    d1 = (X - lb) / span
    d2 = (ub - X) / span
    power = 1.0 / (eta_m + 1.0)
    low = r <= 0.5
    val_lo = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - d1) ** (eta_m + 1.0)
    val_hi = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * (1.0 - d2) ** (eta_m + 1.0)
    with np.errstate(invalid="ignore"):
        delta = np.where(low, val_lo**power - 1.0, 1.0 - val_hi**power)
    Y = np.where(mutate, X + delta * span, X)
    return np.clip(Y, lb, ub).reshape(x.shape)


def de_selection(x: EvaluatedSample, u: EvaluatedSample) -> EvaluatedSample:
    """Keep the trial ``u`` only if it is strictly better than ``x``.

    Scalar objectives compare directly; vector objectives use dominance.
    """
    fx = np.atleast_1d(x.f)
    fu = np.atleast_1d(u.f)
    if fx.size == 1:
        return u if fu[0] < fx[0] else x
    return u if dominates(fu, fx) else x
