import numpy as np
import pytest

from alemo.core import BoxBounds, EvaluatedSample
from alemo.variation import (VariationParams, binomial_crossover, de_best_mutation, de_selection,
                             polynomial_mutation, rank_based_mutation)


def test_rank_based_mutation_examples():
    a = np.array([0.3, 0.4])
    assert np.array_equal(rank_based_mutation(a, a, 0.5), a)
    assert np.array_equal(rank_based_mutation(a, [0.9, 0.1], 0.0), a)
    assert np.allclose(rank_based_mutation([1, 1], [0, 2], 0.5), [1.5, 0.5])
    with pytest.raises(ValueError):
        rank_based_mutation([1, 1], [1, 1, 1], 0.5)


def test_de_best_examples():
    assert np.array_equal(de_best_mutation([1, 1], [0.2, 0.2], [0.2, 0.2], 0.7), [1, 1])
    assert np.allclose(de_best_mutation([1, 1], [0, 0], [2, 2], 0.5), [0, 0])
    assert np.allclose(de_best_mutation([0, 0], [3, 1], [1, 2], 1.0), [2, -1])


def test_crossover_extremes(rng):
    x = np.zeros(6)
    v = np.ones(6)
    assert np.array_equal(binomial_crossover(x, v, 1.0, rng), v)
    for _ in range(20):
        u = binomial_crossover(x, v, 0.0, rng)
        assert u.sum() == 1.0


def test_crossover_frequency(rng):
    X = np.zeros((4000, 30))
    U = binomial_crossover(X, np.ones_like(X), 0.8, rng)
    # expected fraction: 0.8 + 0.2/30 from the forced gene
    assert U.mean() == pytest.approx(0.8 + 0.2 / 30, abs=0.005)


def test_polynomial_mutation(rng):
    b = BoxBounds(np.zeros(5), np.ones(5))
    x = rng.random((50, 5))
    assert np.array_equal(polynomial_mutation(x, b, 20, 0.0, rng), x)
    y = polynomial_mutation(x, b, 20, 1.0, rng)
    assert b.contains(y)
    edge = np.tile([0.0, 1.0, 0.0, 1.0, 0.5], (200, 1))
    assert b.contains(polynomial_mutation(edge, b, 20, 1.0, rng))
    with pytest.raises(ValueError):
        polynomial_mutation(np.full(5, 1.5), b, 20, 1.0, rng)


def test_polynomial_mutation_spread_shrinks_with_eta(rng):
    b = BoxBounds(np.zeros(10), np.ones(10))
    x = np.full((5000, 10), 0.5)
    s20 = np.abs(polynomial_mutation(x, b, 20, 1.0, rng) - x).mean()
    s100 = np.abs(polynomial_mutation(x, b, 100, 1.0, rng) - x).mean()
    assert s100 < s20


def test_de_selection():
    x = EvaluatedSample(np.zeros(1), np.array([2.0]), 0)
    u = EvaluatedSample(np.ones(1), np.array([1.0]), 1)
    assert de_selection(x, u) is u
    assert de_selection(u, x) is u
    tie = EvaluatedSample(np.ones(1), np.array([2.0]), 2)
    assert de_selection(x, tie) is x
    a = EvaluatedSample(np.zeros(1), np.array([1.0, 2.0]), 0)
    b = EvaluatedSample(np.zeros(1), np.array([2.0, 1.0]), 1)
    assert de_selection(a, b) is a


def test_params():
    p = VariationParams()
    assert (p.Mu, p.CR, p.eta_m) == (0.5, 0.8, 20.0)
    assert p.mutation_probability(10) == pytest.approx(0.1)
    assert VariationParams(pm=1.0).mutation_probability(10) == 1.0
    with pytest.raises(ValueError):
        VariationParams(CR=1.5)
