"""True scalar fields on the square, affinely normalised onto [0, pi]."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np
import scipy.ndimage

from .interpolation import total_degree_indices
from .points import check_square

REFERENCE_RESOLUTION = 101
MAX_REDRAWS = 10
ZOOM_LEVELS = 8
PEAK_MARGIN = 0.05

LINEAR_COEFFS = (0.0, 1.0, 0.5)


def _reference_grid() -> np.ndarray:
    g = np.linspace(-1.0, 1.0, REFERENCE_RESOLUTION)
    X, Y = np.meshgrid(g, g)
    return np.column_stack([X.ravel(), Y.ravel()])


@dataclass(frozen=True)
class Field:
    """Normalised field ``shift + scale * raw(x, y)``.

    ``scale`` and ``shift`` are fixed at construction from the extrema of
    ``raw``: the 101x101 reference grid seeds them and a bounded local
    search polishes them, so the map onto [0, pi] stays affine.
    """

    kind: str
    raw: Callable[[np.ndarray], np.ndarray] = dc_field(repr=False, compare=False)
    scale: float = 1.0
    shift: float = 0.0
    degree: Optional[int] = None
    seed: Optional[int] = None
    coefficients: Optional[tuple] = None

    def __call__(self, points) -> np.ndarray:
        return eval_field(self, points)


def _refined_extremum(raw, values, sign) -> float:
    """Extreme of ``sign * raw``, zooming in around every local extremum of the reference grid."""
    n = REFERENCE_RESOLUTION
    vals = (sign * values).reshape(n, n)
    best = float(vals.max())
    spread = best - float(vals.min())
    if spread == 0.0:
        return sign * best
    # overshoot between nodes is a small fraction of the range, so far-off peaks cannot win
    candidate = (vals == scipy.ndimage.maximum_filter(vals, size=3, mode="nearest")) & (
        vals >= best - PEAK_MARGIN * spread
    )
    peaks = np.argwhere(candidate)
    axis = np.linspace(-1.0, 1.0, n)
    for row, col in peaks:
        cx, cy, half = axis[col], axis[row], 2.0 / (n - 1)
        for _ in range(ZOOM_LEVELS):
            gx = np.clip(np.linspace(cx - half, cx + half, 11), -1.0, 1.0)
            gy = np.clip(np.linspace(cy - half, cy + half, 11), -1.0, 1.0)
            X, Y = np.meshgrid(gx, gy)
            local = sign * raw(np.column_stack([X.ravel(), Y.ravel()]))
            i = int(np.argmax(local))
            cx, cy, half = X.ravel()[i], Y.ravel()[i], half / 5.0
        best = max(best, float(local[i]))
    return sign * best


def _normalised(kind, raw, **meta) -> Field:
    grid = _reference_grid()
    ref = raw(grid)
    # extrema between grid nodes would otherwise leak outside [0, pi]
    lo = _refined_extremum(raw, ref, -1.0)
    hi = _refined_extremum(raw, ref, 1.0)
    if hi - lo <= 1e-14 * max(1.0, abs(hi)):
        # constant fields sit at the middle of the range
        return Field(kind, raw, 0.0, np.pi / 2, **meta)
    scale = np.pi / (hi - lo)
    return Field(kind, raw, scale, -lo * scale, **meta)


def eval_field(field: Field, points) -> np.ndarray:
    pts = check_square(points)
    if len(pts) == 0:
        return np.empty(0)
    values = field.shift + field.scale * field.raw(pts)
    # only trims round-off at the extrema
    return np.clip(values, 0.0, np.pi)


def _polynomial(coeffs, degree):
    table = np.zeros((degree + 1, degree + 1))
    for c, (i, j) in zip(coeffs, total_degree_indices(degree)):
        table[i, j] = c
    powers = np.arange(degree + 1)

    def raw(pts):
        px = pts[:, :1] ** powers
        py = pts[:, 1:] ** powers
        return np.einsum("ni,ij,nj->n", px, table, py)

    return raw


def random_polynomial_field(degree: int, seed: int) -> Field:
    """Total-degree polynomial with i.i.d. U[-1, 1] monomial coefficients."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    n_coef = (degree + 1) * (degree + 2) // 2
    for attempt in range(MAX_REDRAWS):
        rng = np.random.default_rng([int(seed), attempt])
        coeffs = tuple(rng.uniform(-1.0, 1.0, size=n_coef))
        f = _normalised(
            "polynomial", _polynomial(coeffs, degree), degree=degree, seed=seed, coefficients=coeffs
        )
        if degree == 0 or f.scale != 0.0:
            return f
    raise ArithmeticError(f"polynomial draw stayed constant after {MAX_REDRAWS} attempts")


def linear_field(coeffs=LINEAR_COEFFS) -> Field:
    a, b, c = coeffs
    return _normalised(
        "linear", lambda p: a + b * p[:, 0] + c * p[:, 1], degree=1, coefficients=tuple(coeffs)
    )


def franke_raw(pts) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    return (
        0.1 * (x + y)
        + np.exp(-8.0 * ((x + 0.4) ** 2 + (y + 0.4) ** 2))
        + np.exp(-8.0 * ((x - 0.4) ** 2 + (y - 0.4) ** 2))
    )


def franke_field() -> Field:
    """Weak linear tilt plus two Gaussian bumps at (-0.4, -0.4) and (0.4, 0.4)."""
    return _normalised("franke", franke_raw)


def nonpoly_raw(pts) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    return np.cos(np.exp(2.0 * x + y)) * np.sin(y)


def nonpoly_field() -> Field:
    return _normalised("nonpoly", nonpoly_raw)


FIELD_KINDS = ("polynomial", "linear", "franke", "nonpoly")


def make_field(kind: str, degree: int = 1, seed: int = 0) -> Field:
    if kind == "polynomial":
        return random_polynomial_field(degree, seed)
    if kind == "linear":
        return linear_field()
    if kind == "franke":
        return franke_field()
    if kind == "nonpoly":
        return nonpoly_field()
    raise ValueError(f"unknown field kind {kind!r}")
