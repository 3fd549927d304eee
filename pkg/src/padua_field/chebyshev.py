"""Chebyshev polynomials of the first kind and Chebyshev-Gauss-Lobatto grids."""

from __future__ import annotations

import numpy as np

from .errors import DomainError

#: abscissae this far outside [-1, 1] are clamped instead of rejected
CLAMP_TOL = 1e-12

SQRT2 = np.sqrt(2.0)


def clamp_unit(s, tol=CLAMP_TOL):
    """Return ``s`` clipped to [-1, 1]; raise DomainError beyond ``tol``."""
    s = np.asarray(s, dtype=float)
    if s.size and (not np.all(np.isfinite(s)) or np.max(np.abs(s)) > 1.0 + tol):
        raise DomainError(f"abscissa outside [-1, 1] (max |s| = {np.max(np.abs(s)):.17g})")
    return np.clip(s, -1.0, 1.0)


def cheb_vander(n: int, s) -> np.ndarray:
    """Rows T_0(s), ..., T_n(s) via the three-term recurrence.

    Returns an array of shape ``(n + 1,) + np.shape(s)``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    s = clamp_unit(s)
    out = np.empty((n + 1,) + s.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = s
    for k in range(2, n + 1):
        out[k] = 2.0 * s * out[k - 1] - out[k - 2]
    return out


def cheb_T(n: int, s):
    """Chebyshev polynomial T_n evaluated at ``s`` (scalar or array)."""
    values = cheb_vander(n, s)[n]
    return float(values) if values.ndim == 0 else values


def orthonormal_vander(n: int, s) -> np.ndarray:
    """Like :func:`cheb_vander` but with rows 1..n scaled by sqrt(2).

    These are orthonormal for the normalized Chebyshev measure on [-1, 1].
    """
    out = cheb_vander(n, s)
    out[1:] *= SQRT2
    return out


def cgl_points(order: int) -> np.ndarray:
    """Chebyshev-Gauss-Lobatto points ``-cos(j*pi/order)``, j = 0..order, increasing."""
    if order < 1:
        raise ValueError("CGL order must be >= 1")
    j = np.arange(order + 1)
    # sin form is exactly antisymmetric and hits 0 exactly for even order
    return np.sin(np.pi * (2 * j - order) / (2 * order))


def cheb_matrix(order: int, abscissae) -> np.ndarray:
    """Rectangular Chebyshev matrix with entry (y, i) = sqrt(2) * T_y(s_i).

    Shape is ``(order + 1, len(abscissae))``; every row, including row 0,
    carries the sqrt(2) factor.
    """
    s = np.atleast_1d(np.asarray(abscissae, dtype=float))
    return SQRT2 * cheb_vander(order, s)
