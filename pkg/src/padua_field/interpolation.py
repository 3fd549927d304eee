"""Lagrange interpolation at the Padua points.

Two evaluation routes are provided and are expected to agree to round-off:

* :func:`interpolate_kernel` sums ``f(x) l(x, x')`` with cardinal functions
  built from the reproducing kernel of total-degree polynomials;
* :func:`interpolate_fast` works on a Cartesian target grid through a
  coefficient matrix and rectangular Chebyshev matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import cgl_points, cheb_matrix, cheb_vander, orthonormal_vander
from .errors import DomainError
from .points import PaduaSet, check_square, grid_indices, padua_points_grid


def total_degree_indices(order: int) -> list[tuple[int, int]]:
    """Exponent pairs (i, j) with i + j <= order, grouped by total degree."""
    return [(i, d - i) for d in range(order + 1) for i in range(d, -1, -1)]


def product_basis(order: int, points) -> np.ndarray:
    """Orthonormal product-Chebyshev basis at ``points``, shape ``(n, N)``.

    Column for (i, j) holds ``phi_i(x) * phi_j(y)`` where ``phi_0 = 1`` and
    ``phi_k = sqrt(2) T_k``; columns follow :func:`total_degree_indices`.
    """
    pts = check_square(points)
    px = orthonormal_vander(order, pts[:, 0])
    py = orthonormal_vander(order, pts[:, 1])
    idx = total_degree_indices(order)
    return np.stack([px[i] * py[j] for i, j in idx], axis=1)


def kernel_matrix(order: int, xs, ys) -> np.ndarray:
    """Reproducing kernel ``K(x, y)`` for every pair of rows of ``xs`` and ``ys``."""
    return product_basis(order, xs) @ product_basis(order, ys).T


def kernel_K(order: int, x, y) -> float:
    """Reproducing kernel of bivariate polynomials of total degree <= ``order``."""
    return float(kernel_matrix(order, [x], [y])[0, 0])


def reduced_kernel_matrix(order: int, xs, ys) -> np.ndarray:
    """``K*(x, y) = K(x, y) - T_k(x[0]) T_k(y[0])`` for all pairs."""
    xs, ys = check_square(xs), check_square(ys)
    tx = cheb_vander(order, xs[:, 0])[order]
    ty = cheb_vander(order, ys[:, 0])[order]
    return kernel_matrix(order, xs, ys) - np.outer(tx, ty)


def reduced_kernel(order: int, x, y) -> float:
    return float(reduced_kernel_matrix(order, [x], [y])[0, 0])


@lru_cache(maxsize=64)
def _padua(order: int) -> PaduaSet:
    return padua_points_grid(order)


@lru_cache(maxsize=64)
def _kernel_diagonal(order: int) -> np.ndarray:
    pts = _padua(order).points
    diag = np.einsum("ij,ij->i", product_basis(order, pts), product_basis(order, pts))
    diag -= cheb_vander(order, pts[:, 0])[order] ** 2
    diag.setflags(write=False)
    return diag


def lagrange_matrix(order: int, targets) -> np.ndarray:
    """Cardinal functions ``l(x, x')``: row per target ``x'``, column per Padua node ``x``.

    Columns follow the canonical ordering of ``padua_points_grid(order)``.
    """
    nodes = _padua(order).points
    return reduced_kernel_matrix(order, targets, nodes) / _kernel_diagonal(order)


def lagrange_basis(order: int, node, target) -> float:
    """Single cardinal function value ``l(node, target)``; ``node`` must be a Padua point."""
    i = _padua(order).index_of(node)
    return float(lagrange_matrix(order, [target])[0, i])


@dataclass(frozen=True)
class PaduaSamples:
    """Field values at the Padua points of one order, in canonical point order."""

    order: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(_padua(self.order)),):
            raise ValueError(
                f"order {self.order} needs {len(_padua(self.order))} samples, got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def points(self) -> np.ndarray:
        return _padua(self.order).points

    @classmethod
    def from_function(cls, order, func):
        """Sample ``func`` (mapping an ``(n, 2)`` array to ``n`` values) at the nodes."""
        return cls(order, np.asarray(func(_padua(order).points), dtype=float))

    @classmethod
    def from_points(cls, points, values, order=None):
        """Match arbitrary-order ``(point, value)`` pairs onto the Padua set.

        The order is inferred from the sample count when not given.
        """
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        values = np.asarray(values, dtype=float)
        if order is None:
            order = infer_order(len(points))
        pset = _padua(order)
        if len(points) != len(pset):
            raise ValueError(f"order {order} needs {len(pset)} samples, got {len(points)}")
        ordered = np.full(len(pset), np.nan)
        for p, v in zip(points, values):
            ordered[pset.index_of(p)] = v
        if np.isnan(ordered).any():
            raise ValueError("samples do not cover every Padua point exactly once")
        return cls(order, ordered)


def infer_order(count: int) -> int:
    """Padua order whose point count is ``count``; ValueError if there is none."""
    order = int(round((np.sqrt(8 * count + 1) - 3) / 2))
    if order < 1 or (order + 1) * (order + 2) // 2 != count:
        raise ValueError(f"{count} is not a Padua point count")
    return order


def interpolate_kernel(samples: PaduaSamples, targets) -> np.ndarray:
    """Evaluate the Lagrange-Padua interpolant at scattered targets."""
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    if len(targets) == 0:
        return np.empty(0)
    return lagrange_matrix(samples.order, targets) @ samples.values


def coefficient_matrix(samples: PaduaSamples) -> np.ndarray:
    """Triangular coefficient matrix of the interpolant in the sqrt(2)-scaled basis.

    ``G`` holds ``w_x f(x)`` at the product-grid entries occupied by Padua
    points; the full product is ``T(C_{k+1}) G T(C_{k+2})^t``.
    """
    k = samples.order
    pset = _padua(k)
    G = np.zeros((k + 1, k + 2))
    for p, w, v in zip(pset.points, pset.weights, samples.values):
        r, s = grid_indices(p, k)
        G[r, s] = w * v
    C = cheb_matrix(k, cgl_points(k)) @ G @ cheb_matrix(k, cgl_points(k + 1)).T
    i, j = np.indices(C.shape)
    C0 = np.where(i + j <= k, C, 0.0)
    C0[k, 0] *= 0.5
    return C0


def _degree_scale(order: int) -> np.ndarray:
    # converts uniform sqrt(2) rows to phi_0 = 1, phi_k = sqrt(2) T_k; the quarter is folded in
    s = np.full(order + 1, 2.0)
    s[0] = 1.0
    return np.outer(s, s) / 4.0


def interpolate_fast(samples: PaduaSamples, grid_x, grid_y) -> np.ndarray:
    """Interpolant on the Cartesian grid ``grid_x x grid_y``.

    Returns an array of shape ``(len(grid_y), len(grid_x))``, i.e. entry
    ``[i, j]`` is the value at ``(grid_x[j], grid_y[i])`` as with
    ``np.meshgrid(grid_x, grid_y)``.
    """
    gx = np.atleast_1d(np.asarray(grid_x, dtype=float))
    gy = np.atleast_1d(np.asarray(grid_y, dtype=float))
    if gx.size == 0 or gy.size == 0:
        raise ValueError("evaluation grid must be non-empty")
    if np.max(np.abs(gx)) > 1 + 1e-12 or np.max(np.abs(gy)) > 1 + 1e-12:
        raise DomainError("evaluation grid leaves the unit square")
    k = samples.order
    C0 = coefficient_matrix(samples) * _degree_scale(k)
    return (cheb_matrix(k, gx).T @ C0 @ cheb_matrix(k, gy)).T
