import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from tensorimpute.errors import DimensionError
from tensorimpute.tensor import TimeSeriesMatrix, fold, to_matrix, to_tensor, unfold

from oracles import fold_loop, to_tensor_loop, unfold_loop

dims3 = st.tuples(*[st.integers(1, 5)] * 3)
finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_singleton_tensor():
    t = np.full((1, 1, 1), 5.0)
    for k in (1, 2, 3):
        assert unfold(t, k).tolist() == [[5.0]]


def test_mode1_ordering():
    t = np.zeros((1, 2, 2))
    t[0, 0, 0], t[0, 1, 0], t[0, 0, 1], t[0, 1, 1] = 1, 2, 3, 4
    assert unfold(t, 1).tolist() == [[1, 2, 3, 4]]
    assert np.array_equal(fold(np.array([[1.0, 2, 3, 4]]), 1, (1, 2, 2)), t)


@pytest.mark.parametrize("k,shape", [(1, (3, 20)), (2, (4, 15)), (3, (5, 12))])
def test_unfold_shapes_and_loop_oracle(k, shape):
    t = np.random.default_rng(k).standard_normal((3, 4, 5))
    u = unfold(t, k)
    assert u.shape == shape
    assert np.array_equal(u, unfold_loop(t, k))
    assert np.array_equal(fold(u, k, t.shape), fold_loop(u, k, t.shape))


def test_fold_dimension_mismatch():
    with pytest.raises(DimensionError):
        fold(np.zeros((2, 3)), 1, (2, 2, 2))


def test_bad_mode():
    with pytest.raises(ValueError):
        unfold(np.zeros((2, 2, 2)), 4)


@settings(max_examples=60, deadline=None)
@given(dims3.flatmap(lambda d: arrays(float, d, elements=finite)))
def test_fold_unfold_round_trip(t):
    for k in (1, 2, 3):
        assert np.array_equal(fold(unfold(t, k), k, t.shape), t)
        assert np.isclose(np.linalg.norm(unfold(t, k)), np.linalg.norm(t), rtol=1e-12)


def test_to_tensor_column_mapping():
    t = to_tensor(np.array([[1.0, 2, 3, 4]]), 2)
    assert t.shape == (1, 2, 2)
    assert (t[0, 0, 0], t[0, 1, 0], t[0, 0, 1], t[0, 1, 1]) == (1, 2, 3, 4)


def test_single_season():
    y = np.arange(6.0).reshape(2, 3)
    t = to_tensor(y, 3)
    assert t.shape == (2, 3, 1)
    assert np.array_equal(t[:, :, 0], y)


def test_to_tensor_rejects_partial_season():
    with pytest.raises(DimensionError):
        to_tensor(np.zeros((2, 7)), 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_q_round_trip_and_mode1_identity(M, I, J, seed):
    y = np.random.default_rng(seed).standard_normal((M, I * J))
    t = to_tensor(y, I)
    assert np.array_equal(t, to_tensor_loop(y, I))
    assert np.array_equal(to_matrix(t), y)
    assert np.array_equal(to_matrix(t), unfold(t, 1))


def test_time_series_matrix_validation():
    with pytest.raises(DimensionError):
        TimeSeriesMatrix(np.zeros((2, 3)), np.ones((3, 2), dtype=bool))
    y = TimeSeriesMatrix(np.array([[1.0, 2.0]]), np.array([[True, False]]))
    assert y.observed().tolist() == [[1.0, 0.0]]
