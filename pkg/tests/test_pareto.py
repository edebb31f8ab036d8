import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from alemo import kernels
from alemo.pareto import (crowding_distance, dominates, nd_ranks, non_dominated_sort, nondominated_mask,
                          select_top, update_front)

from oracles import brute_ranks

FIVE = np.array([[1, 4], [2, 3], [3, 2], [4, 1], [2, 2]], float)


def test_dominates_examples():
    assert dominates([1, 2], [2, 3])
    assert not dominates([1, 2], [2, 1])
    assert not dominates([1, 2], [1, 2])
    with pytest.raises(ValueError):
        dominates([1, 2], [1, 2, 3])


def test_five_point_example(backend):
    r = kernels.nd_ranks(FIVE, backend=backend)
    assert set(np.flatnonzero(r == 1)) == {0, 3, 4}
    assert set(np.flatnonzero(r == 2)) == {1, 2}


def test_single_point_and_dominator(backend):
    assert kernels.nd_ranks(np.array([[3.0, 1.0]]), backend=backend).tolist() == [1]
    F = np.array([[0, 0], [1, 2], [3, 1], [2, 2]], float)
    assert np.flatnonzero(kernels.nd_ranks(F, backend=backend) == 1).tolist() == [0]


def test_empty_sort_raises():
    with pytest.raises(ValueError):
        nd_ranks(np.empty((0, 2)))


@pytest.mark.parametrize("m", [2, 3])
def test_ranks_match_brute_force(backend, rng, m):
    for _ in range(40):
        n = int(rng.integers(1, 60))
        F = rng.integers(0, 6, size=(n, m)).astype(float)  # many ties and duplicates
        assert np.array_equal(kernels.nd_ranks(F, backend=backend), brute_ranks(F))


def test_crowding_examples():
    d = crowding_distance([[0, 1], [0.5, 0.5], [1, 0]])
    assert np.isinf(d[0]) and np.isinf(d[2])
    assert d[1] == pytest.approx(2.0)
    assert np.all(np.isinf(crowding_distance([[0, 1], [1, 0]])))
    # zero span in f2: interior points only get the f1 contribution
    d = crowding_distance([[0, 1], [0.25, 1], [1, 1]])
    assert d[1] == pytest.approx(1.0)


def test_select_top_examples():
    ranked = non_dominated_sort(FIVE)
    assert sorted(select_top(ranked, 5)) == [0, 1, 2, 3, 4]
    assert sorted(select_top(ranked, 3)) == [0, 3, 4]
    # rank-2 pair (2,3) and (3,2) both have infinite crowding: lower index wins
    assert sorted(select_top(ranked, 4)) == [0, 1, 3, 4]
    with pytest.raises(ValueError):
        select_top(ranked, 6)


def test_select_top_prefers_larger_crowding():
    F = np.array([[0, 4], [4, 0], [1, 3], [2, 2], [3.5, 0.5]], float)
    ranked = non_dominated_sort(F)
    # by hand: (2,2) gets 2.5/4 + 2.5/4, the other interior points 2/4 + 2/4
    assert ranked.crowding[2:] == pytest.approx([1.0, 1.25, 1.0])
    assert sorted(select_top(ranked, 3).tolist()) == [0, 1, 3]


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 25), st.integers(2, 3)),
              elements=st.floats(-5, 5, allow_nan=False)))
def test_rank_properties(F):
    r = nd_ranks(F)
    assert r.min() == 1
    for i in range(len(F)):
        for j in range(len(F)):
            if dominates(F[i], F[j]):
                assert r[i] < r[j]
    assert np.array_equal(nd_ranks(F[::-1]), r[::-1])


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 30), st.just(2)), elements=st.floats(0, 1)))
def test_update_front_matches_batch(F):
    front = np.empty((0, 2))
    for f in F:
        front = update_front(front, f)
    expect = np.unique(F[nondominated_mask(F)], axis=0)
    assert np.array_equal(np.unique(front, axis=0), expect)
