"""Sparse-sensor field reconstruction with Lagrange interpolation at the Padua points."""

from .errors import ConditioningError, DomainError, ExperimentFailure, RankDeficiencyError
from .fields import Field, make_field
from .interpolation import (
    PaduaSamples,
    interpolate_fast,
    interpolate_kernel,
    lagrange_basis,
    lagrange_matrix,
)
from .points import PaduaSet, padua_points_curve, padua_points_grid
from .rbf import RbfModel, rbf_eval, rbf_fit

__all__ = [
    "ConditioningError",
    "DomainError",
    "ExperimentFailure",
    "Field",
    "PaduaSamples",
    "PaduaSet",
    "RankDeficiencyError",
    "RbfModel",
    "interpolate_fast",
    "interpolate_kernel",
    "lagrange_basis",
    "lagrange_matrix",
    "make_field",
    "padua_points_curve",
    "padua_points_grid",
    "rbf_eval",
    "rbf_fit",
]
