"""Projective single-shot measurements on sensor qubits and the batch estimator.

A field value ``f`` in [0, pi] sets the probability ``(1 - cos f) / 2`` of
reading outcome 1; ``m`` shots are reduced to a field estimate by inverting
that law on the observed frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CLAMP_TOL = 1e-12


def _check_phase(f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.size and (not np.all(np.isfinite(f)) or f.min() < -CLAMP_TOL or f.max() > np.pi + CLAMP_TOL):
        raise DomainError("field value outside [0, pi]")
    return np.clip(f, 0.0, np.pi)


def born_probability(f_val):
    """Probability of outcome 1 for field value ``f_val``."""
    # sin^2(f/2) equals (1 - cos f)/2 but keeps full precision near f = 0
    p = np.sin(_check_phase(f_val) / 2.0) ** 2
    return float(p) if p.ndim == 0 else p


def sample_shots(p, m: int, rng: np.random.Generator):
    """Number of ones in ``m`` Bernoulli(p) shots."""
    if m < 1:
        raise ValueError("need at least one shot")
    return rng.binomial(m, np.clip(p, 0.0, 1.0))


def estimate_field(ones, m: int):
    """Invert the outcome law on the observed frequency ``ones / m``."""
    if m < 1:
        raise ValueError("need at least one shot")
    ones = np.asarray(ones)
    if np.any(ones < 0) or np.any(ones > m):
        raise ValueError("count of ones must lie in [0, m]")
    # 2 asin(sqrt(q)) = arccos(1 - 2q), better conditioned for small q
    est = 2.0 * np.arcsin(np.sqrt(np.clip(ones / m, 0.0, 1.0)))
    return float(est) if est.ndim == 0 else est


def sensor_stream(seed: int, trial: int, sensor: int) -> np.random.Generator:
    """Independent generator keyed by (master seed, trial, sensor)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial, sensor])))


@dataclass(frozen=True)
class MeasurementRecord:
    sensor: tuple
    shots: int
    ones: int
    estimate: float


def measure_sensors(sensors, truth, m: int, seed: int, trial: int, offset: int = 0) -> list[MeasurementRecord]:
    """Simulate ``m`` shots on every sensor; sensor ``i`` draws from stream ``offset + i``."""
    sensors = np.asarray(sensors, dtype=float).reshape(-1, 2)
    p = np.atleast_1d(born_probability(truth))
    records = []
    for i, (pt, pi_) in enumerate(zip(sensors, p)):
        ones = int(sample_shots(pi_, m, sensor_stream(seed, trial, offset + i)))
        records.append(MeasurementRecord((float(pt[0]), float(pt[1])), m, ones, estimate_field(ones, m)))
    return records
