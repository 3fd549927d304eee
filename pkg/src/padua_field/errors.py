"""Exception types raised across the package."""


class DomainError(ValueError):
    """A coordinate or field value lies outside its admissible interval."""


class RankDeficiencyError(ArithmeticError):
    """A Vandermonde system does not have full column rank."""

    def __init__(self, message, deficiency=0):
        super().__init__(message)
        self.deficiency = deficiency


class ConditioningError(ArithmeticError):
    """A linear system is too ill-conditioned to solve reliably."""


class ExperimentFailure(RuntimeError):
    """Too many trials of an experiment raised errors."""
