"""Dominance-category labels and the Parzen-kernel (PNN) discriminator.

Labels are integers: 1 = C-I (better than the reference front), 2 = C-II
(the reference front, i.e. the second non-dominated level), 3 = C-III.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist
from scipy.special import logsumexp

from .core import BoxBounds
from .pareto import nd_ranks

C_I, C_II, C_III = 1, 2, 3
CLASSES = (C_I, C_II, C_III)


@dataclass(frozen=True)
class LabeledSet:
    X: np.ndarray
    labels: np.ndarray
    fallback: bool = False

    def members(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)


def label_archive(X, F, criterion: str = "rank") -> LabeledSet:
    """Label a population relative to its second non-dominated front.

    ``criterion="rank"`` maps rank 1 / rank 2 / rank >= 3 to C-I / C-II /
    C-III. ``criterion="any"`` keeps C-II as rank 2 and labels a member
    C-I if it dominates at least one reference solution, C-III if it is
    dominated by at least one, and C-II otherwise.

    With a single rank the labeling degrades to everything-C-I and the
    returned set has ``fallback=True``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    F = np.atleast_2d(np.asarray(F, dtype=float))
    ranks = nd_ranks(F)
    if ranks.max() < 2:
        warnings.warn("population has a single non-domination rank; all members labelled C-I",
                      RuntimeWarning, stacklevel=2)
        return LabeledSet(X, np.full(len(F), C_I), fallback=True)
    if criterion == "rank":
        labels = np.minimum(ranks, 3)
    elif criterion == "any":
        ref = F[ranks == 2]
        labels = np.full(len(F), C_II)
        for i in np.flatnonzero(ranks != 2):
            f = F[i]
            beats = np.any(np.all(f <= ref, axis=1) & np.any(f < ref, axis=1))
            beaten = np.any(np.all(ref <= f, axis=1) & np.any(ref < f, axis=1))
            if beats:
                labels[i] = C_I
            elif beaten:
                labels[i] = C_III
    else:
        raise ValueError(f"unknown labelling criterion {criterion!r}")
    return LabeledSet(X, labels.astype(np.int64))


def default_sigma(U, scale: float = 0.1) -> float:
    """``scale`` times the mean pairwise distance between normalized centers."""
    if len(U) < 2:
        return scale
    mean = float(pdist(U).mean())
    return scale * mean if mean > 0 else scale


class PnnClassifier:
    """Probabilistic neural network over the three dominance categories.

    The pattern layer holds one Gaussian unit per training vector
    (normalized to the unit box); the summation layer averages units per
    class and weights by the empirical class prior; the output layer takes
    the arg max, breaking exact ties toward the better class.
    """

    def __init__(self, bounds: BoxBounds, sigma: float | None = None, sigma_scale: float = 0.1):
        self.bounds = bounds
        self.sigma = sigma
        self.sigma_scale = sigma_scale
        self.centers_ = None

    def fit(self, data: LabeledSet) -> "PnnClassifier":
        if len(data.labels) == 0:
            raise ValueError("cannot train on an empty labelled set")
        U = self.bounds.normalize(data.X)
        self.centers_ = {c: U[data.labels == c] for c in CLASSES}
        counts = np.array([len(self.centers_[c]) for c in CLASSES], dtype=float)
        self.priors_ = counts / counts.sum()
        self.present_ = counts > 0
        if self.sigma is None:
            self.sigma_ = default_sigma(U, self.sigma_scale)
        else:
            self.sigma_ = float(self.sigma)
        return self

    def log_scores(self, X) -> np.ndarray:
        """log(prior * class-conditional density) per class, -inf when absent."""
        if self.centers_ is None:
            raise RuntimeError("PnnClassifier has not been trained")
        U = np.atleast_2d(self.bounds.normalize(X))
        out = np.full((len(U), 3), -np.inf)
        two_s2 = 2.0 * self.sigma_**2
        for k, c in enumerate(CLASSES):
            C = self.centers_[c]
            if len(C) == 0:
                continue
            d2 = cdist(U, C, "sqeuclidean")
            out[:, k] = np.log(self.priors_[k]) + logsumexp(-d2 / two_s2, axis=1) - np.log(len(C))
        return out

    def predict(self, X) -> np.ndarray:
        # argmax returns the first maximum, i.e. the better class on ties
        return np.asarray(CLASSES)[np.argmax(self.log_scores(X), axis=1)]

    def predict_one(self, x) -> tuple[int, np.ndarray]:
        logs = self.log_scores(np.asarray(x, dtype=float)[None, :])[0]
        return int(CLASSES[int(np.argmax(logs))]), np.exp(logs - np.max(logs))


def pnn_train(data: LabeledSet, bounds: BoxBounds, sigma: float | None = None,
              sigma_scale: float = 0.1) -> PnnClassifier:
    return PnnClassifier(bounds, sigma=sigma, sigma_scale=sigma_scale).fit(data)


def pnn_predict(model: PnnClassifier, x) -> tuple[int, np.ndarray]:
    """Label of ``x`` plus per-class scores scaled so the winner scores 1."""
    return model.predict_one(x)
