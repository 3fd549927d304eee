import itertools

import numpy as np
import pytest

from padua_field.chebyshev import cgl_points
from padua_field.errors import DomainError
from padua_field.interpolation import reduced_kernel
from padua_field.points import (
    check_square,
    classify_and_weight,
    data_grid,
    padua_count,
    padua_mask,
    padua_points_curve,
    padua_points_grid,
    regular_sensor_grid,
    standard_assignment,
)


def _set_equal(a, b, tol):
    return len(a) == len(b) and all(np.min(np.max(np.abs(b - p), axis=1)) <= tol for p in a)


def test_curve_order_one():
    pts = padua_points_curve(1).points
    assert _set_equal(pts, np.array([(-1, -1), (1, 0), (-1, 1)], float), 1e-12)


@pytest.mark.parametrize("order, count", [(2, 6), (4, 15), (5, 21), (10, 66)])
def test_counts(order, count):
    assert len(padua_points_curve(order)) == count
    assert len(padua_points_grid(order)) == count


@pytest.mark.parametrize("order", range(1, 16))
def test_constructions_agree(order):
    a, b = padua_points_curve(order), padua_points_grid(order)
    # canonical ordering makes them comparable element-wise
    np.testing.assert_allclose(a.points, b.points, atol=1e-12)
    assert a.classes == b.classes
    np.testing.assert_allclose(a.weights, b.weights)


@pytest.mark.parametrize("order", range(1, 21))
def test_set_invariants(order):
    pset = padua_points_grid(order)
    assert len(pset) == padua_count(order) == (order + 2) * (order + 1) // 2
    assert pset.classes.count("vertex") == 2
    assert np.all(pset.weights > 0)
    d = np.linalg.norm(pset.points[:, None] - pset.points[None], axis=2)
    np.fill_diagonal(d, np.inf)
    assert d.min() > 1e-9
    # membership in the CGL product grid
    cx, cy = cgl_points(order), cgl_points(order + 1)
    assert np.max(np.min(np.abs(pset.points[:, :1] - cx), axis=1)) < 1e-12
    assert np.max(np.min(np.abs(pset.points[:, 1:] - cy), axis=1)) < 1e-12
    # cubature weights integrate constants exactly over the normalised measure
    assert pset.weights.sum() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("order", range(1, 12))
def test_mask_matches_parity_rule(order):
    cx, cy = cgl_points(order), cgl_points(order + 1)
    r, s = np.nonzero(padua_mask(order))
    assert np.all((r + s) % 2 == 0)
    assert len(r) == padua_count(order)
    pts = np.column_stack([cx[r], cy[s]])
    assert _set_equal(pts, padua_points_curve(order).points, 1e-12)


def test_weights_examples():
    pset = padua_points_grid(2)
    for p, c in zip(pset.points, pset.classes):
        cls, w = classify_and_weight(p, 2)
        assert cls == c
        assert w == pytest.approx({"interior": 1 / 3, "boundary": 1 / 6, "vertex": 1 / 12}[cls])
    assert classify_and_weight((-1.0, -1.0), 1) == ("vertex", pytest.approx(0.25))


def test_classify_rejects_non_padua_points():
    with pytest.raises(KeyError):
        classify_and_weight((0.3, 0.1), 2)
    # on the product grid but with odd index sum
    with pytest.raises(KeyError):
        classify_and_weight((-1.0, -0.5), 2)


@pytest.mark.parametrize("order", range(1, 16))
def test_weight_is_reciprocal_reduced_kernel(order):
    pset = padua_points_grid(order)
    for p, w in zip(pset.points, pset.weights):
        assert 1.0 / reduced_kernel(order, p, p) == pytest.approx(w, rel=1e-10)


def test_orders_rejected():
    for bad in (0, -2, 1.5):
        with pytest.raises(ValueError):
            padua_points_grid(bad)
        with pytest.raises(ValueError):
            padua_points_curve(bad)


def test_index_of():
    pset = padua_points_grid(3)
    for i, p in enumerate(pset.points):
        assert pset.index_of(p) == i
    with pytest.raises(KeyError):
        pset.index_of((0.123, 0.456))


def test_points_are_read_only():
    pset = padua_points_grid(3)
    with pytest.raises(ValueError):
        pset.points[0, 0] = 0.0


def test_data_grid_examples():
    g = data_grid(5, 5)
    assert len(g) == 25
    assert any(np.allclose(p, (-1, -1)) for p in g) and any(np.allclose(p, (1, 1)) for p in g)
    assert np.allclose(np.unique(g[:, 0]), np.arange(-1, 1.01, 0.5))
    assert _set_equal(data_grid(2, 2), np.array([(-1, -1), (1, -1), (-1, 1), (1, 1)], float), 1e-15)
    with pytest.raises(ValueError):
        data_grid(1, 5)


def test_regular_grid_examples():
    assert len(regular_sensor_grid(4)) == 16
    assert _set_equal(regular_sensor_grid(2).points, data_grid(2, 2), 1e-15)
    with pytest.raises(ValueError):
        regular_sensor_grid(1)


@pytest.mark.parametrize("d", range(2, 10))
def test_overlap_removal_leaves_no_coincidence(d):
    data = data_grid(5, 5)
    grid = regular_sensor_grid(d, data, remove_overlaps=True)
    dist = np.linalg.norm(grid.points[:, None] - data[None], axis=2)
    assert dist.min() > 1e-9 if len(grid) else True
    assert len(regular_sensor_grid(d, data)) == d * d


def test_nine_by_nine_with_overlap_removal_has_54_sensors():
    # the 5x5 data grid is a sub-lattice of the 9x9 grid, so exact removal drops 25 sensors
    grid = regular_sensor_grid(9, data_grid(5, 5), remove_overlaps=True)
    assert len(grid) == 54


@pytest.mark.parametrize("orientation", range(4))
def test_standard_assignment_structure(orientation):
    data = data_grid(5, 5)
    a = standard_assignment(data, orientation)
    assert len(a.sensors) == 9
    sizes = sorted(len(g) for g in a.groups)
    assert sizes == [0, 2, 2, 2, 2, 4, 4, 4, 4]
    flat = [q for g in a.groups for q in g]
    assert len(flat) == len(set(flat)) == 24
    # block sensors own their four nearest data qubits
    for s, g in zip(a.sensors, a.groups):
        if len(g) == 4:
            d = np.linalg.norm(data - s, axis=1)
            assert set(np.argsort(d, kind="stable")[:4]) == set(g)
            assert np.allclose(np.sort(d)[:4], np.sqrt(2) * 0.25)


def test_standard_orientations_cover_every_data_qubit():
    data = data_grid(5, 5)
    covered = set().union(*(standard_assignment(data, o).assigned for o in range(4)))
    assert covered == set(range(25))
    unassigned = {(set(range(25)) - standard_assignment(data, o).assigned).pop() for o in range(4)}
    corners = {i for i, p in enumerate(data) if abs(p[0]) == 1 and abs(p[1]) == 1}
    assert unassigned == corners


def test_standard_assignment_errors():
    with pytest.raises(ValueError):
        standard_assignment(data_grid(4, 4), 0)
    with pytest.raises(ValueError):
        standard_assignment(data_grid(5, 5), 4)


def test_check_square():
    np.testing.assert_array_equal(check_square([[1 + 1e-13, -1.0]]), [[1.0, -1.0]])
    with pytest.raises(DomainError):
        check_square([[1.5, 0.0]])


def test_curve_parameters_cover_every_point():
    # every (j, j') pair lands on a Padua point, and every Padua point is hit
    for order in (3, 6):
        pset = padua_points_grid(order)
        k = order
        hits = set()
        for j, jp in itertools.product(range(k + 1), repeat=2):
            if j + jp > k:
                continue
            t = (j * k + jp * (k + 1)) * np.pi / (k * (k + 1))
            hits.add(pset.index_of((-np.cos((k + 1) * t), -np.cos(k * t))))
        assert hits == set(range(len(pset)))
