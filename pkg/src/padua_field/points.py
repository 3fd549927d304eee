"""Sensor and data-qubit geometries on the square [-1, 1]^2.

Point sets are plain ``(n, 2)`` float arrays; the containers below attach
the metadata each geometry needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chebyshev import cgl_points
from .errors import DomainError

DEDUP_TOL = 1e-9
BOUNDARY_TOL = 1e-9
OVERLAP_TOL = 1e-9

VERTEX, BOUNDARY, INTERIOR = "vertex", "boundary", "interior"
_CLASS_FACTOR = {VERTEX: 0.5, BOUNDARY: 1.0, INTERIOR: 2.0}


def padua_count(order: int) -> int:
    return (order + 1) * (order + 2) // 2


def check_square(points, tol=1e-12) -> np.ndarray:
    """Validate an ``(n, 2)`` array of points in the unit square and clip round-off."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.size and (not np.all(np.isfinite(pts)) or np.max(np.abs(pts)) > 1.0 + tol):
        raise DomainError("point outside the unit square [-1, 1]^2")
    return np.clip(pts, -1.0, 1.0)


def canonical_order(points: np.ndarray) -> np.ndarray:
    """Indices sorting points lexicographically by (x, y), insensitive to round-off."""
    keys = np.round(points, 9) + 0.0  # + 0.0 folds -0.0 into 0.0
    return np.lexsort((keys[:, 1], keys[:, 0]))


def _dedupe(points: np.ndarray, tol=DEDUP_TOL) -> np.ndarray:
    keep = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in keep):
            keep.append(p)
    return np.array(keep)


@dataclass(frozen=True)
class PaduaSet:
    """Padua points of the first family, with class labels and cubature weights."""

    order: int
    points: np.ndarray
    classes: tuple
    weights: np.ndarray

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.points)

    def index_of(self, point, tol=DEDUP_TOL) -> int:
        """Position of ``point`` in this set; KeyError if it is not a Padua point."""
        d = np.max(np.abs(self.points - np.asarray(point, dtype=float)), axis=1)
        i = int(np.argmin(d))
        if d[i] > tol:
            raise KeyError(f"{tuple(point)} is not a Padua point of order {self.order}")
        return i


def _classify(point) -> str:
    on_edge = int(np.sum(np.abs(np.asarray(point)) >= 1.0 - BOUNDARY_TOL))
    return {2: VERTEX, 1: BOUNDARY, 0: INTERIOR}[on_edge]


def _build_set(order: int, raw: np.ndarray) -> PaduaSet:
    pts = np.clip(raw, -1.0, 1.0)[canonical_order(raw)]
    classes = tuple(_classify(p) for p in pts)
    base = 1.0 / (order * (order + 1))
    weights = np.array([base * _CLASS_FACTOR[c] for c in classes])
    return PaduaSet(order, pts, classes, weights)


def _check_order(order: int) -> None:
    if int(order) != order or order < 1:
        raise ValueError(f"Padua order must be a positive integer, got {order!r}")


def padua_points_curve(order: int) -> PaduaSet:
    """Padua points as equispaced parameter values on the generating curve.

    The curve is ``(-cos((k+1) t), -cos(k t))`` sampled at
    ``t = (j k + j' (k+1)) pi / (k (k+1))`` for ``j, j' >= 0, j + j' <= k``.
    """
    _check_order(order)
    k = order
    j, jp = np.array([(a, b) for a in range(k + 1) for b in range(k + 1 - a)]).T
    t = (j * k + jp * (k + 1)) * np.pi / (k * (k + 1))
    raw = np.column_stack([-np.cos((k + 1) * t), -np.cos(k * t)])
    return _build_set(k, _dedupe(raw))


def padua_mask(order: int) -> np.ndarray:
    """Boolean ``(order+1, order+2)`` mask of Padua points in the CGL product grid.

    Built by taking every other entry of the flattened grid; the reshape
    depends on the parity of ``order`` so the alternation lands correctly.
    """
    _check_order(order)
    k = order
    flat = np.arange((k + 1) * (k + 2)) % 2 == 0
    if k % 2 == 1:
        return flat.reshape(k + 1, k + 2)
    return flat.reshape(k + 2, k + 1).T


def padua_points_grid(order: int) -> PaduaSet:
    """Padua points as a masked subset of the product grid C_{k+1} x C_{k+2}."""
    _check_order(order)
    xs, ys = np.meshgrid(cgl_points(order), cgl_points(order + 1), indexing="ij")
    mask = padua_mask(order)
    raw = np.column_stack([xs[mask], ys[mask]])
    return _build_set(order, raw)


def grid_indices(point, order: int) -> tuple[int, int]:
    """Indices (r, s) of ``point`` in C_{k+1} x C_{k+2}; KeyError when off the grid."""
    cx, cy = cgl_points(order), cgl_points(order + 1)
    r = int(np.argmin(np.abs(cx - point[0])))
    s = int(np.argmin(np.abs(cy - point[1])))
    if abs(cx[r] - point[0]) > DEDUP_TOL or abs(cy[s] - point[1]) > DEDUP_TOL:
        raise KeyError(f"{tuple(point)} is not on the CGL product grid of order {order}")
    return r, s


def classify_and_weight(point, order: int) -> tuple[str, float]:
    """Class label and cubature weight of a Padua point of the given order."""
    _check_order(order)
    r, s = grid_indices(point, order)
    if (r + s) % 2:
        raise KeyError(f"{tuple(point)} is not a Padua point of order {order}")
    cls = _classify(point)
    return cls, _CLASS_FACTOR[cls] / (order * (order + 1))


def data_grid(rows: int, cols: int) -> np.ndarray:
    """Equispaced ``rows x cols`` grid spanning the square, row-major with y outer."""
    if rows < 2 or cols < 2:
        raise ValueError("data grid needs at least 2 rows and 2 columns")
    xs, ys = np.meshgrid(np.linspace(-1, 1, cols), np.linspace(-1, 1, rows))
    return np.column_stack([xs.ravel(), ys.ravel()])


@dataclass(frozen=True)
class SensorGrid:
    kind: str
    points: np.ndarray
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)


def remove_overlapping(points: np.ndarray, others: np.ndarray, tol=OVERLAP_TOL) -> np.ndarray:
    if len(others) == 0:
        return points
    d = np.max(np.abs(points[:, None, :] - others[None, :, :]), axis=2)
    return points[np.min(d, axis=1) > tol]


def regular_sensor_grid(d: int, data=None, remove_overlaps: bool = False) -> SensorGrid:
    """``d x d`` equispaced sensors over the square, optionally minus data-qubit sites."""
    if d < 2:
        raise ValueError("regular sensor grid needs d >= 2")
    pts = data_grid(d, d)
    if remove_overlaps:
        if data is None:
            raise ValueError("overlap removal needs the data-qubit grid")
        pts = remove_overlapping(pts, np.asarray(data, dtype=float))
    return SensorGrid("regular", pts, {"d": d, "remove_overlaps": bool(remove_overlaps)})


def padua_sensor_grid(order: int) -> SensorGrid:
    return SensorGrid("padua", padua_points_grid(order).points, {"order": order})


@dataclass(frozen=True)
class NeighborhoodAssignment:
    """Nine Standard-protocol sensors and the data qubits each one owns.

    ``groups[i]`` lists indices into the 5x5 data grid owned by sensor ``i``.
    """

    orientation: int
    sensors: np.ndarray
    groups: tuple

    @property
    def assigned(self) -> set:
        return {q for g in self.groups for q in g}


def _standard_layout() -> list[list[tuple[int, int]]]:
    # (row, col) groups for the anchor corner at (-1, -1); row/col 4 are the odd lines
    groups = []
    for r0 in (0, 2):
        for c0 in (0, 2):
            groups.append([(r0, c0), (r0, c0 + 1), (r0 + 1, c0), (r0 + 1, c0 + 1)])
    for r0 in (0, 2):
        groups.append([(r0, 4), (r0 + 1, 4)])
    for c0 in (0, 2):
        groups.append([(4, c0), (4, c0 + 1)])
    groups.append([])  # the odd-row/odd-column vertex sensor
    return groups


def standard_assignment(data, orientation: int) -> NeighborhoodAssignment:
    """Standard local-neighbourhood assignment on a 5x5 data grid.

    Orientation bit 0 mirrors the layout in x, bit 1 mirrors it in y, so the
    four orientations anchor the 4x4 block sub-grid at each corner in turn.
    """
    if orientation not in (0, 1, 2, 3):
        raise ValueError("orientation must be one of 0, 1, 2, 3")
    data = np.asarray(data, dtype=float)
    ref = data_grid(5, 5)
    if data.shape != ref.shape or not np.allclose(data, ref, atol=1e-12):
        raise ValueError("standard assignment is defined for the 5x5 data grid only")

    def mirror(rc):
        r, c = rc
        if orientation & 1:
            c = 4 - c
        if orientation & 2:
            r = 4 - r
        return r, c

    sensors, groups = [], []
    for group in _standard_layout():
        cells = [mirror(rc) for rc in group]
        idx = tuple(sorted(r * 5 + c for r, c in cells))
        if cells:
            sensors.append(data[list(idx)].mean(axis=0))
        else:
            r, c = mirror((4, 4))
            sensors.append(data[r * 5 + c])
        groups.append(idx)
    return NeighborhoodAssignment(orientation, np.array(sensors), tuple(groups))
