"""Dominance, non-dominated sorting, crowding distance and truncation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def nd_ranks(F) -> np.ndarray:
    """1-based non-domination rank of each row of ``F``."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if len(F) == 0:
        raise ValueError("cannot sort an empty population")
    return kernels.nd_ranks(F)


def crowding_distance(front) -> np.ndarray:
    """Crowding distance of each member of one front.

    Extremes in every objective get ``inf``. An objective with zero span
    contributes nothing to interior members.
    """
    F = np.atleast_2d(np.asarray(front, dtype=float))
    n, m = F.shape
    if n < 3:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        col = F[order, k]
        span = col[-1] - col[0]
        if span <= 0:
            span = 1.0
        dist[order[1:-1]] += (col[2:] - col[:-2]) / span
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
    return dist


@dataclass(frozen=True)
class RankedPopulation:
    """Rows of ``F`` annotated with rank and within-front crowding.

    ``index`` holds the eval_index (or any stable identifier) of each row;
    it is the final tie-break in :func:`select_top`.
    """

    F: np.ndarray
    rank: np.ndarray
    crowding: np.ndarray
    index: np.ndarray

    def __len__(self):
        return len(self.rank)

    def front(self, r: int) -> np.ndarray:
        return np.flatnonzero(self.rank == r)


def non_dominated_sort(F, index=None) -> RankedPopulation:
    F = np.atleast_2d(np.asarray(F, dtype=float))
    rank = nd_ranks(F)
    crowd = np.empty(len(F))
    for r in np.unique(rank):
        members = np.flatnonzero(rank == r)
        crowd[members] = crowding_distance(F[members])
    if index is None:
        index = np.arange(len(F))
    return RankedPopulation(F, rank, crowd, np.asarray(index))


def selection_order(ranked: RankedPopulation) -> np.ndarray:
    """Row order by ascending rank, descending crowding, ascending index."""
    return np.lexsort((ranked.index, -ranked.crowding, ranked.rank))


def select_top(ranked: RankedPopulation, n: int) -> np.ndarray:
    """Row positions of the best ``n`` members."""
    if n > len(ranked):
        raise ValueError(f"cannot select {n} members from a population of {len(ranked)}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return selection_order(ranked)[:n]


def nondominated_mask(F) -> np.ndarray:
    return nd_ranks(F) == 1


def update_front(front: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Add ``f`` to a mutually non-dominated set, keeping it non-dominated.

    Duplicates of an existing member are not added.
    """
    f = np.asarray(f, dtype=float)
    if len(front) == 0:
        return f[None, :].copy()
    if np.any(np.all(front <= f, axis=1)):
        return front
    keep = ~(np.all(f <= front, axis=1) & np.any(f < front, axis=1))
    return np.vstack([front[keep], f])
