import warnings

import numpy as np
import pytest

from alemo.classifier import C_I, C_II, C_III, LabeledSet, PnnClassifier, label_archive, pnn_predict, pnn_train
from alemo.core import BoxBounds

from oracles import brute_ranks

FIVE = np.array([[1, 4], [2, 3], [3, 2], [4, 1], [2, 2]], float)


def test_label_five_point_example():
    ls = label_archive(np.zeros((5, 1)), FIVE)
    assert ls.labels.tolist() == [C_I, C_II, C_II, C_I, C_I]
    assert not ls.fallback


def test_label_three_ranks_match_oracle(rng):
    for _ in range(50):
        F = rng.random((30, 2))
        ls = label_archive(rng.random((30, 3)), F)
        expect = np.minimum(brute_ranks(F), 3)
        if expect.max() == 1:
            continue
        assert np.array_equal(ls.labels, expect)


def test_label_single_rank_fallback():
    F = np.array([[0, 1], [0.5, 0.5], [1, 0]])
    with pytest.warns(RuntimeWarning):
        ls = label_archive(np.zeros((3, 2)), F)
    assert ls.fallback and np.all(ls.labels == C_I)


def test_label_any_criterion():
    # (0,0) dominates the reference members, (5,5) is dominated by them
    F = np.array([[0, 0], [1, 3], [3, 1], [5, 5], [0.5, 9]])
    ls = label_archive(np.zeros((5, 1)), F, criterion="any")
    ranks = brute_ranks(F)
    assert ranks.tolist() == [1, 2, 2, 3, 2]
    assert ls.labels.tolist() == [C_I, C_II, C_II, C_III, C_II]
    with pytest.raises(ValueError):
        label_archive(np.zeros((5, 1)), F, criterion="bogus")


def test_one_center_per_class_recovers_training_labels():
    b = BoxBounds.unit(2)
    X = np.array([[0.1, 0.1], [0.5, 0.9], [0.9, 0.2]])
    m = pnn_train(LabeledSet(X, np.array([C_I, C_II, C_III])), b)
    assert m.predict(X).tolist() == [C_I, C_II, C_III]


def test_duplicate_point_goes_to_larger_prior():
    b = BoxBounds.unit(2)
    X = np.array([[0.5, 0.5], [0.5, 0.5], [0.5, 0.5]])
    m = pnn_train(LabeledSet(X, np.array([C_I, C_III, C_III])), b, sigma=0.1)
    assert m.predict(X[:1])[0] == C_III


def test_equidistant_tie_goes_to_better_class():
    b = BoxBounds.unit(2)
    X = np.array([[0.25, 0.5], [0.75, 0.5]])
    m = pnn_train(LabeledSet(X, np.array([C_III, C_I])), b, sigma=0.2)
    label, scores = pnn_predict(m, np.array([0.5, 0.5]))
    assert label == C_I
    assert scores[0] == pytest.approx(1.0) and scores[2] == pytest.approx(1.0)
    assert scores[1] == 0.0


def test_small_sigma_matches_nearest_center(rng):
    b = BoxBounds.unit(2)
    X = rng.random((12, 2))
    y = rng.integers(1, 4, 12)
    m = pnn_train(LabeledSet(X, y), b, sigma=1e-3)
    g = np.stack(np.meshgrid(np.linspace(0, 1, 41), np.linspace(0, 1, 41)), -1).reshape(-1, 2)
    d = ((g[:, None, :] - X[None, :, :]) ** 2).sum(-1)
    nearest = y[np.argmin(d, axis=1)]
    second = np.sort(d, axis=1)[:, :2]
    clear = second[:, 1] - second[:, 0] > 1e-4  # skip near-boundary grid points
    assert np.array_equal(m.predict(g)[clear], nearest[clear])


def test_untrained_and_empty():
    m = PnnClassifier(BoxBounds.unit(2))
    with pytest.raises(RuntimeError):
        m.predict(np.zeros((1, 2)))
    with pytest.raises(ValueError):
        m.fit(LabeledSet(np.empty((0, 2)), np.empty(0, int)))
