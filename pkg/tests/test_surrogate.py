import numpy as np
import pytest
from scipy.spatial.distance import pdist

from alemo.core import BoxBounds
from alemo.surrogate import rbf_fit, rbf_predict


def test_x_squared_midpoints():
    b = BoxBounds.unit(1)
    x = np.linspace(0, 1, 10)[:, None]
    m = rbf_fit(x, x[:, 0] ** 2, b)
    mid = (x[:-1] + x[1:]) / 2
    assert np.max(np.abs(m.predict(mid) - mid[:, 0] ** 2)) < 0.05


def test_interpolates_random_sets(rng):
    for _ in range(20):
        d = int(rng.integers(1, 8))
        n = int(rng.integers(2, 80))
        b = BoxBounds(-rng.random(d), 1 + rng.random(d))
        X = b.denormalize(rng.random((n, d)))
        y = rng.normal(size=n) * 10 ** rng.uniform(-2, 3)
        m = rbf_fit(X, y, b)
        assert np.max(np.abs(m.predict(X) - y)) <= 1e-8 * max(1, np.abs(y).max())


def test_default_sigma_is_mean_distance(rng):
    b = BoxBounds.unit(3)
    X = rng.random((15, 3))
    m = rbf_fit(X, rng.random(15), b)
    assert m.sigma == pytest.approx(pdist(X).mean())


def test_antisymmetry_and_decay():
    b = BoxBounds.unit(1)
    m = rbf_fit(np.array([[0.25], [0.75]]), np.array([1.0, -1.0]), b)
    assert abs(rbf_predict(m, np.array([0.5]))) < 1e-12
    assert abs(m.predict(np.array([50.0]))) < 1e-12


def test_single_point_constant_and_errors():
    b = BoxBounds.unit(2)
    m = rbf_fit(np.array([[0.2, 0.3]]), np.array([4.0]), b)
    assert np.all(m.predict(np.random.default_rng(0).random((5, 2))) == 4.0)
    with pytest.raises(ValueError):
        rbf_fit(np.empty((0, 2)), np.empty(0), b)
    with pytest.raises(ValueError):
        m.predict(np.zeros(3))


def test_duplicates_keep_first_and_permutation_invariance(rng):
    b = BoxBounds.unit(2)
    X = rng.random((10, 2))
    y = rng.random(10)
    Xd = np.vstack([X, X[:1]])
    yd = np.append(y, 99.0)
    m = rbf_fit(Xd, yd, b)
    assert m.predict(X[0]) == pytest.approx(y[0], abs=1e-8)
    p = rng.permutation(10)
    q = rng.random((7, 2))
    assert np.allclose(rbf_fit(X[p], y[p], b).predict(q), rbf_fit(X, y, b).predict(q), atol=1e-8)


def test_near_duplicates_still_interpolate():
    b = BoxBounds.unit(4)
    rng = np.random.default_rng(5)
    X = rng.random((30, 4))
    X = np.vstack([X, X[:10] + 1e-7])
    y = np.sin(X.sum(1) * 3)
    m = rbf_fit(X, y, b)
    assert np.max(np.abs(m.predict(X) - y)) <= 1e-8
