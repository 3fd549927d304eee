"""Gaussian radial basis function interpolation of scattered samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConditioningError

DEFAULT_RIDGE = 1e-10


@dataclass(frozen=True)
class RbfModel:
    centers: np.ndarray
    coefficients: np.ndarray
    shape: float
    ridge: float

    def __call__(self, targets) -> np.ndarray:
        return rbf_eval(self, targets)


def _distances(a, b) -> np.ndarray:
    return np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2))


def default_shape(centers) -> float:
    """Reciprocal of the mean nearest-neighbour spacing of the centers."""
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    if len(centers) < 2:
        return 1.0
    d = _distances(centers, centers)
    np.fill_diagonal(d, np.inf)
    return 1.0 / float(d.min(axis=1).mean())


def rbf_fit(centers, values, shape=None, ridge=DEFAULT_RIDGE) -> RbfModel:
    """Solve ``(Phi + ridge I) c = values`` with ``Phi_ij = exp(-(shape r_ij)^2)``."""
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    values = np.asarray(values, dtype=float)
    if values.shape != (len(centers),):
        raise ValueError("need one value per center")
    if not np.all(np.isfinite(values)):
        raise ValueError("values must be finite")
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    d = _distances(centers, centers)
    if len(centers) > 1 and np.min(d[~np.eye(len(centers), dtype=bool)]) <= 1e-9:
        raise ValueError("RBF centers must be distinct")
    shape = default_shape(centers) if shape is None else float(shape)
    if shape <= 0:
        raise ValueError("shape parameter must be positive")
    phi = np.exp(-((shape * d) ** 2)) + ridge * np.eye(len(centers))
    try:
        coef = scipy.linalg.solve(phi, values, assume_a="pos")
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise ConditioningError(f"RBF system is singular: {exc}") from exc
    return RbfModel(centers, coef, shape, float(ridge))


def rbf_eval(model: RbfModel, targets) -> np.ndarray:
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    if len(targets) == 0:
        return np.empty(0)
    return np.exp(-((model.shape * _distances(targets, model.centers)) ** 2)) @ model.coefficients
