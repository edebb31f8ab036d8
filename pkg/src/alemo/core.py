"""Shared value types, the black-box problem interface and random streams.

Decision and objective vectors are plain 1-D float ``numpy`` arrays.
Objectives are always stored for minimization; maximization problems
negate at their ``evaluate`` boundary.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Protocol, Sequence, runtime_checkable

import numpy as np


def as_vector(values, name="vector") -> np.ndarray:
    v = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite values: {v}")
    return v


@dataclass(frozen=True)
class BoxBounds:
    lb: np.ndarray
    ub: np.ndarray

    def __post_init__(self):
        lb = as_vector(self.lb, "lb")
        ub = as_vector(self.ub, "ub")
        if lb.shape != ub.shape:
            raise ValueError("lb and ub must have the same length")
        if np.any(lb >= ub):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lb.flags.writeable = False
        ub.flags.writeable = False
        object.__setattr__(self, "lb", lb)
        object.__setattr__(self, "ub", ub)

    @classmethod
    def unit(cls, d: int) -> "BoxBounds":
        return cls(np.zeros(d), np.ones(d))

    @property
    def d(self) -> int:
        return len(self.lb)

    @property
    def span(self) -> np.ndarray:
        return self.ub - self.lb

    def normalize(self, X):
        return (np.asarray(X, dtype=float) - self.lb) / self.span

    def denormalize(self, U):
        return self.lb + np.asarray(U, dtype=float) * self.span

    def contains(self, X, atol=0.0) -> bool:
        X = np.asarray(X, dtype=float)
        return bool(np.all(X >= self.lb - atol) and np.all(X <= self.ub + atol))


@dataclass(frozen=True)
class EvaluatedSample:
    x: np.ndarray
    f: np.ndarray
    eval_index: int


@runtime_checkable
class Problem(Protocol):
    """Black-box multi-objective problem in minimization convention."""

    d: int
    m: int
    bounds: BoxBounds

    def evaluate(self, x: np.ndarray) -> np.ndarray: ...


def negate_for_minimization(f_max) -> np.ndarray:
    """Flip a maximization objective vector into minimization convention."""
    f = as_vector(f_max, "objective vector")
    return -f


def clamp_to_bounds(x, bounds: BoxBounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != bounds.d:
        raise ValueError(f"vector length {x.shape[-1]} does not match bounds dimension {bounds.d}")
    return np.clip(x, bounds.lb, bounds.ub)


class Archive:
    """Append-only store of every truly evaluated sample.

    Rows of ``X`` and ``F`` are in evaluation order; row ``i`` has
    ``eval_index == i``.
    """

    def __init__(self, d: int, m: int, capacity: int = 64):
        self.d = d
        self.m = m
        self._X = np.empty((max(capacity, 1), d))
        self._F = np.empty((max(capacity, 1), m))
        self._n = 0

    def __len__(self):
        return self._n

    def append(self, x, f) -> EvaluatedSample:
        x = as_vector(x, "decision vector")
        f = as_vector(f, "objective vector")
        if x.shape != (self.d,) or f.shape != (self.m,):
            raise ValueError("sample shape does not match archive")
        if self._n == len(self._X):
            grow = 2 * len(self._X)
            self._X = np.resize(self._X, (grow, self.d))
            self._F = np.resize(self._F, (grow, self.m))
        self._X[self._n] = x
        self._F[self._n] = f
        self._n += 1
        return EvaluatedSample(x.copy(), f.copy(), self._n - 1)

    @property
    def X(self) -> np.ndarray:
        v = self._X[: self._n]
        v.flags.writeable = False
        return v

    @property
    def F(self) -> np.ndarray:
        v = self._F[: self._n]
        v.flags.writeable = False
        return v

    def __getitem__(self, i) -> EvaluatedSample:
        if not -self._n <= i < self._n:
            raise IndexError(i)
        i %= self._n
        return EvaluatedSample(self._X[i].copy(), self._F[i].copy(), i)

    @property
    def samples(self) -> list[EvaluatedSample]:
        return [self[i] for i in range(self._n)]


class RandomStream:
    """Splittable seed: ``child(i)`` derives an independent stream.

    Thin wrapper over ``numpy.random.SeedSequence`` so that each trial and
    each consumer inside a run can draw from its own reproducible stream.
    """

    def __init__(self, seed: int | np.random.SeedSequence):
        if isinstance(seed, np.random.SeedSequence):
            self._ss = seed
        else:
            self._ss = np.random.SeedSequence(int(seed) & (2**64 - 1))

    @property
    def seed(self) -> int:
        return int(self._ss.entropy)

    def child(self, index: int) -> "RandomStream":
        ss = np.random.SeedSequence(self._ss.entropy, spawn_key=tuple(self._ss.spawn_key) + (int(index),))
        return RandomStream(ss)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self._ss))


def as_generator(stream) -> np.random.Generator:
    """Accept a RandomStream, a Generator, or an integer seed."""
    if isinstance(stream, np.random.Generator):
        return stream
    if isinstance(stream, RandomStream):
        return stream.generator()
    return np.random.default_rng(stream)


@dataclass
class CountingProblem:
    """Wraps a Problem and counts calls to ``evaluate`` (thread-safe)."""

    inner: Problem
    count: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def d(self):
        return self.inner.d

    @property
    def m(self):
        return self.inner.m

    @property
    def bounds(self):
        return self.inner.bounds

    def evaluate(self, x):
        with self._lock:
            self.count += 1
        return self.inner.evaluate(x)


def stack(vectors: Sequence) -> np.ndarray:
    return np.atleast_2d(np.asarray(vectors, dtype=float))
