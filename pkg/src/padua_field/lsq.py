"""Weighted least-squares interpolation and conditioning diagnostics.

Covers weighted Vandermonde systems, condition numbers, discrete Gram
matrices, empirical Lebesgue constants, the block pseudoinverse identity
and the perturbed-node experiment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .chebyshev import SQRT2
from .errors import RankDeficiencyError
from .interpolation import lagrange_matrix, product_basis, total_degree_indices
from .points import check_square, padua_points_grid

MONOMIAL = "monomial"
CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class BasisSpec:
    """Total-degree polynomial basis on the square.

    ``chebyshev`` is the product basis ``phi_i(x) phi_j(y)`` with
    ``phi_0 = 1``, ``phi_k = sqrt(2) T_k``, except that the pure
    ``x``-direction term of top degree is ``T_k(x)`` unscaled. That one
    change makes the basis orthonormal for the Padua cubature.
    """

    kind: str
    degree: int

    def __post_init__(self):
        if self.kind not in (MONOMIAL, CHEBYSHEV):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.degree < 0:
            raise ValueError("basis degree must be non-negative")

    @property
    def dimension(self) -> int:
        return (self.degree + 1) * (self.degree + 2) // 2

    def evaluate(self, points) -> np.ndarray:
        pts = check_square(points)
        if self.kind == MONOMIAL:
            return np.stack(
                [pts[:, 0] ** i * pts[:, 1] ** j for i, j in total_degree_indices(self.degree)],
                axis=1,
            )
        B = product_basis(self.degree, pts)
        if self.degree > 0:
            B[:, total_degree_indices(self.degree).index((self.degree, 0))] /= SQRT2
        return B


@dataclass(frozen=True)
class WeightedVandermonde:
    """Vandermonde matrix ``V[i, j] = p_j(x_i)`` with diagonal row weights."""

    basis: BasisSpec
    points: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray

    @property
    def weighted(self) -> np.ndarray:
        return self.weights[:, None] * self.matrix


def weighted_vandermonde(basis: BasisSpec, points, weights=None) -> WeightedVandermonde:
    pts = check_square(points)
    w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(pts),):
        raise ValueError("need one weight per point")
    if np.any(w <= 0):
        raise ValueError("weights must be strictly positive")
    return WeightedVandermonde(basis, pts, w, basis.evaluate(pts))


def padua_vandermonde(order: int) -> WeightedVandermonde:
    """Chebyshev basis at the Padua points with square-rooted cubature weights.

    Row weights enter squared in the discrete inner product, hence the root.
    """
    pset = padua_points_grid(order)
    return weighted_vandermonde(BasisSpec(CHEBYSHEV, order), pset.points, np.sqrt(pset.weights))


def _rank_check(A: np.ndarray, rtol: float = 1e-10) -> None:
    n = A.shape[1]
    if A.shape[0] == 0:
        raise RankDeficiencyError("empty system", n)
    _, R, _ = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > rtol * diag[0])) if diag.size and diag[0] > 0 else 0
    if rank < n:
        raise RankDeficiencyError(
            f"Vandermonde matrix is rank deficient by {n - rank} column(s)", n - rank
        )


def lsq_fit(V: WeightedVandermonde, values) -> np.ndarray:
    """Coefficients minimising ``sum_i w_i^2 |f(x_i) - p(x_i)|^2``."""
    A = V.weighted
    _rank_check(A)
    b = V.weights * np.asarray(values, dtype=float)
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    return coef


def lsq_eval(V: WeightedVandermonde, coef, targets) -> np.ndarray:
    return V.basis.evaluate(targets) @ coef


def condition_number(V: WeightedVandermonde, norm=2) -> float:
    """``||(WV)^+|| * ||WV||`` in the requested matrix norm (2 by default)."""
    A = V.weighted
    _rank_check(A)
    return float(np.linalg.norm(np.linalg.pinv(A), norm) * np.linalg.norm(A, norm))


def gram_orthonormality(V: WeightedVandermonde) -> np.ndarray:
    """Discrete Gram matrix ``<p_i, p_j> = sum_k w_k^2 p_i(x_k) p_j(x_k)``."""
    A = V.weighted
    return A.T @ A


@dataclass(frozen=True)
class LebesgueEstimate:
    order: int
    grid_resolution: int
    value: float


def lebesgue_function(order: int, targets) -> np.ndarray:
    """``sum_x |l(x, x')|`` at each target, chunked to bound memory."""
    targets = check_square(targets)
    out = np.empty(len(targets))
    step = 8192
    for start in range(0, len(targets), step):
        out[start:start + step] = np.abs(lagrange_matrix(order, targets[start:start + step])).sum(axis=1)
    return out


def square_grid(resolution: int) -> np.ndarray:
    g = np.linspace(-1.0, 1.0, resolution)
    X, Y = np.meshgrid(g, g)
    return np.column_stack([X.ravel(), Y.ravel()])


def lebesgue_estimate(order: int, resolution: int = 201) -> LebesgueEstimate:
    """Maximum of the Lebesgue function over a ``resolution x resolution`` grid."""
    if resolution < 50:
        raise ValueError("resolution must be at least 50")
    value = float(lebesgue_function(order, square_grid(resolution)).max())
    return LebesgueEstimate(order, resolution, value)


def block_pseudoinverse(A, B) -> np.ndarray:
    """``(A + B)^+`` through the pseudoinverse of the block matrix ``[[A, B], [B, A]]``."""
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    if A.shape != B.shape:
        raise ValueError("A and B must have the same shape")
    m, n = A.shape
    big = np.block([[A, B], [B, A]])
    left = np.hstack([np.eye(n), np.eye(n)])
    right = np.vstack([np.eye(m), np.eye(m)])
    return 0.5 * left @ np.linalg.pinv(big) @ right


def min_spacing(points) -> float:
    pts = np.asarray(points, dtype=float)
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def perturbed_nodes(order: int, eps: float, rng) -> np.ndarray:
    """Padua nodes each displaced by ``eps`` in an independent random direction, clipped."""
    nodes = padua_points_grid(order).points
    theta = rng.uniform(0.0, 2.0 * np.pi, size=len(nodes))
    moved = nodes + eps * np.column_stack([np.cos(theta), np.sin(theta)])
    return np.clip(moved, -1.0, 1.0)


def perturbation_sweep(order, eps_list, field, seed, resolution=101) -> list[dict]:
    """Uniform reconstruction error after refitting on randomly displaced nodes.

    Each row reports ``eps`` and the max-norm error of the least-squares
    interpolant (Chebyshev basis, cubature weights) built from exact field
    values at the displaced nodes.
    """
    pset = padua_points_grid(order)
    limit = min_spacing(pset.points) / 2
    targets = square_grid(resolution)
    truth = field(targets)
    basis = BasisSpec(CHEBYSHEV, order)
    rows = []
    for eps in eps_list:
        if eps < 0 or eps >= limit:
            raise ValueError(f"eps={eps} must lie in [0, {limit:.3g}) to keep nodes distinct")
        rng = np.random.default_rng([int(seed), order])
        nodes = perturbed_nodes(order, eps, rng)
        V = weighted_vandermonde(basis, nodes, np.sqrt(pset.weights))
        coef = lsq_fit(V, field(nodes))
        err = float(np.max(np.abs(lsq_eval(V, coef, targets) - truth)))
        rows.append({"order": order, "eps": float(eps), "seed": int(seed), "error": err})
    return rows
