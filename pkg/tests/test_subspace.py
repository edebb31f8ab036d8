import numpy as np
import pytest

from alemo.core import BoxBounds, CountingProblem
from alemo.benchmarks import Benchmark
from alemo.metrics import hv_improvement
from alemo.pareto import non_dominated_sort, select_top
from alemo.subspace import (DEGENERATE_WIDEN, fit_surrogates, identify_subspace, select_hv_infill,
                            surrogate_pareto_search, training_rows)
from alemo.surrogate import rbf_fit


def test_two_point_box():
    sub = identify_subspace(np.array([[0.0, 1.0], [1.0, 0.0]]), np.array([[0, 1], [1, 0]]), 2, BoxBounds.unit(2))
    assert np.array_equal(sub.box.lb, [0, 0]) and np.array_equal(sub.box.ub, [1, 1])


def test_degenerate_box_is_widened():
    b = BoxBounds.unit(2)
    X = np.array([[0.3, 1.0]] * 3)
    sub = identify_subspace(X, np.array([[0, 1], [1, 0], [0.5, 0.5]]), 3, b)
    assert np.allclose(sub.box.span, DEGENERATE_WIDEN)
    assert sub.box.lb[0] < 0.3 < sub.box.ub[0]
    assert sub.box.ub[1] == 1.0  # shifted inward at the upper bound
    assert b.contains(np.vstack([sub.box.lb, sub.box.ub]))


def test_too_few_samples():
    with pytest.raises(ValueError):
        identify_subspace(np.zeros((3, 2)), np.zeros((3, 2)), 4, BoxBounds.unit(2))


def test_box_monotone_in_tau(rng):
    X = rng.random((60, 4))
    F = rng.random((60, 2))
    b = BoxBounds.unit(4)
    order = select_top(non_dominated_sort(F), 60)
    for tau in range(5, 59, 7):
        a = identify_subspace(X, F, tau, b).box
        c = identify_subspace(X, F, tau + 1, b).box
        assert np.all(c.lb <= a.lb) and np.all(c.ub >= a.ub)
        assert set(order[:tau]) <= set(order[: tau + 1])


def test_training_rows_fallback():
    b = BoxBounds.unit(3)
    X = np.array([[0.1, 0.1, 0.1], [0.12, 0.1, 0.1], [0.9, 0.9, 0.9]])
    F = np.array([[0, 1], [1, 0], [5, 5]])
    sub = identify_subspace(X, F, 2, b)
    assert sorted(training_rows(X, sub).tolist()) == [0, 1]


def test_linear_biobjective_search_spreads():
    b = BoxBounds.unit(2)
    X = np.random.default_rng(1).random((30, 2))
    models = [rbf_fit(X, X[:, 0], b), rbf_fit(X, 1 - X[:, 0], b)]
    PX, PF = surrogate_pareto_search(models, b, 40, 3)
    assert b.contains(PX)
    assert PX[:, 0].min() < 0.05 and PX[:, 0].max() > 0.95
    hist = np.histogram(PX[:, 0], bins=5, range=(0, 1))[0]
    assert np.all(hist >= 3)


def test_zero_generations_returns_nondominated_initial():
    b = BoxBounds.unit(2)
    X = np.random.default_rng(1).random((20, 2))
    models = [rbf_fit(X, X[:, 0], b), rbf_fit(X, X[:, 1], b)]
    init = np.array([[0.1, 0.9], [0.9, 0.1], [0.8, 0.8], [0.5, 0.5]])
    PX, _ = surrogate_pareto_search(models, b, 0, 0, initial=init, pop_size=4)
    assert sorted(map(tuple, PX)) == sorted(map(tuple, init[[0, 1, 3]]))


def test_search_makes_no_true_evaluations():
    p = CountingProblem(Benchmark("ZDT1", d=5))
    X = np.random.default_rng(0).random((40, 5))
    F = np.array([p.evaluate(x) for x in X])
    sub = identify_subspace(X, F, 20, p.bounds)
    models = fit_surrogates(X, F, sub)
    before = p.count
    surrogate_pareto_search(models, sub.box, 10, 0)
    assert p.count == before


def test_infill_examples():
    b = BoxBounds.unit(2)
    archive_X = np.array([[0.0, 0.0]])
    front = np.array([[0.5, 0.5]])
    z = np.array([1.0, 1.0])
    one = select_hv_infill([[0.3, 0.3]], [[0.9, 0.9]], archive_X, front, z, b)
    assert np.array_equal(one, [0.3, 0.3])
    pick = select_hv_infill([[0.2, 0.2], [0.4, 0.4]], [[0.6, 0.6], [0.4, 0.6]], archive_X, front, z, b)
    assert np.array_equal(pick, [0.4, 0.4])
    pick = select_hv_infill([[0.2, 0.2], [0.4, 0.4]], [[0.25, 0.75], [0.45, 0.55]], archive_X, front, z, b)
    assert np.array_equal(pick, [0.2, 0.2])


def test_infill_skips_archived_vectors():
    b = BoxBounds.unit(2)
    archive_X = np.array([[0.2, 0.2], [0.6, 0.6]])
    front = np.array([[0.5, 0.5]])
    cand = np.array([[0.2, 0.2], [0.7, 0.7]])
    pick = select_hv_infill(cand, [[0.0, 0.0], [0.9, 0.9]], archive_X, front, [1, 1], b)
    assert np.array_equal(pick, [0.7, 0.7])
    only_dups = select_hv_infill(archive_X, [[0, 0], [0, 0]], archive_X, front, [1, 1], b)
    assert any(np.array_equal(only_dups, a) for a in archive_X)
