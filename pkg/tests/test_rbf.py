import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from padua_field.points import data_grid, regular_sensor_grid
from padua_field.rbf import default_shape, rbf_eval, rbf_fit


def test_constant_values_reproduced():
    c = np.random.default_rng(0).uniform(-1, 1, (12, 2))
    model = rbf_fit(c, np.full(12, 1.7), ridge=0.0)
    np.testing.assert_allclose(rbf_eval(model, c), 1.7, atol=1e-8)


def test_single_center():
    model = rbf_fit([[0.2, 0.1]], [3.0], ridge=0.0)
    np.testing.assert_allclose(model.coefficients, [3.0])
    assert model([[0.2, 0.1]])[0] == pytest.approx(3.0)


def test_corners_linear_field():
    c = data_grid(2, 2)
    model = rbf_fit(c, c[:, 0], ridge=0.0)
    np.testing.assert_allclose(rbf_eval(model, c), c[:, 0], atol=1e-8)


@pytest.mark.parametrize("d", range(2, 10))
def test_interpolation_condition_on_benchmark_grids(d):
    for remove in (False, True):
        c = regular_sensor_grid(d, data_grid(5, 5), remove).points
        v = np.random.default_rng(d).uniform(0, np.pi, len(c))
        np.testing.assert_allclose(rbf_eval(rbf_fit(c, v), c), v, atol=1e-8)


def test_far_targets_decay():
    c = data_grid(3, 3)
    model = rbf_fit(c, np.ones(9))
    far = np.array([[10.0 / model.shape + 1, 0.0]])
    assert abs(rbf_eval(model, far)[0]) < 1e-6


def test_mirror_symmetry():
    c = data_grid(4, 4)
    v = np.cos(c[:, 0]) + c[:, 1] ** 2  # even in x
    model = rbf_fit(c, v)
    t = np.random.default_rng(1).uniform(-1, 1, (30, 2))
    np.testing.assert_allclose(rbf_eval(model, t), rbf_eval(model, t * [-1, 1]), atol=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    c = data_grid(4, 4) + rng.uniform(-0.05, 0.05, (16, 2))
    v = rng.normal(size=16)
    perm = rng.permutation(16)
    t = rng.uniform(-1, 1, (20, 2))
    np.testing.assert_allclose(rbf_eval(rbf_fit(c, v), t), rbf_eval(rbf_fit(c[perm], v[perm]), t), atol=1e-8)


def test_deterministic_round_trip():
    c, v = data_grid(5, 5), np.arange(25.0)
    a, b = rbf_eval(rbf_fit(c, v), c), rbf_eval(rbf_fit(c, v), c)
    assert np.array_equal(a, b)


def test_default_shape_is_reciprocal_spacing():
    assert default_shape(data_grid(5, 5)) == pytest.approx(2.0)


def test_fit_errors():
    with pytest.raises(ValueError):
        rbf_fit([[0, 0], [0, 0]], [1, 2])
    with pytest.raises(ValueError):
        rbf_fit([[0, 0]], [np.inf])
    with pytest.raises(ValueError):
        rbf_fit([[0, 0]], [1.0], shape=-1)
    with pytest.raises(ValueError):
        rbf_fit([[0, 0], [1, 1]], [1.0])
    assert rbf_eval(rbf_fit([[0, 0]], [1.0]), np.empty((0, 2))).shape == (0,)
