"""Rates of improvement of the degree of excellence over time.

Average rate between two snapshots is the secant slope; the instantaneous
rate at a sampled time uses a three-point difference on the nearest earlier
and later snapshots (exact for quadratics, one-sided at the boundaries).
Effort is proportional to the rate, E = alpha * dX/dt, with alpha the
configured developer-ability coefficient; this module never estimates alpha.

Polynomial fits (degree 1-3) go through the normal equations over a time
origin shifted to the first snapshot, which keeps the tiny systems well
conditioned; coefficients are reported in plain (unshifted) hours.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import (
    ExtrapolationError,
    InsufficientDataError,
    IntervalError,
    InvalidCoefficientError,
    NotFoundError,
)
from .history import Trajectory


class RateMethod(enum.Enum):
    SECANT = "secant"
    CENTRAL_DIFFERENCE = "central-difference"
    FIT_DERIVATIVE = "fit-derivative"


class TrendClass(enum.Enum):
    UNIFORM = "uniform"
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"


@dataclass(frozen=True)
class RateEstimate:
    """dX/dt in percentage points per hour, with estimator metadata."""

    value: float
    method: RateMethod
    interval: tuple[float, float]


@dataclass(frozen=True)
class EffortEstimate:
    alpha: float
    rate: RateEstimate
    effort: float


@dataclass(frozen=True)
class PolyFit:
    """Least-squares fit of X over hours; constant coefficient first."""

    degree: int
    coefficients: tuple[float, ...]
    residual_sum_of_squares: float

    def value_at(self, t: float) -> float:
        total = 0.0
        for coeff in reversed(self.coefficients):
            total = total * t + coeff
        return total

    def derivative_at(self, t: float) -> float:
        total = 0.0
        for power in range(len(self.coefficients) - 1, 0, -1):
            total = total * t + power * self.coefficients[power]
        return total


def _points(traj: Trajectory) -> tuple[list[float], list[float]]:
    ts = [s.t_hours for s in traj.snapshots]
    xs = [s.metrics.degree_of_excellence for s in traj.snapshots]
    return ts, xs


def secant_rate(traj: Trajectory, t_i: float, t_f: float) -> RateEstimate:
    """Average rate (X(t_f) - X(t_i)) / (t_f - t_i) between two snapshots."""
    if t_i >= t_f:
        raise IntervalError(f"secant interval must satisfy t_i < t_f, got [{t_i}, {t_f}]")
    ts, xs = _points(traj)
    values = {}
    for t, x in zip(ts, xs):
        values[t] = x
    missing = [t for t in (t_i, t_f) if t not in values]
    if missing:
        raise NotFoundError(
            f"no snapshot at t = {missing[0]} h; available times: {ts}"
        )
    value = (values[t_f] - values[t_i]) / (t_f - t_i)
    return RateEstimate(value=value, method=RateMethod.SECANT, interval=(t_i, t_f))


def _three_point_derivative(t0, x0, t1, x1, t2, x2) -> float:
    # Derivative of the quadratic through three unevenly spaced points at t1.
    return (
        x0 * (t1 - t2) / ((t0 - t1) * (t0 - t2))
        + x1 * (2 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2))
        + x2 * (t1 - t0) / ((t2 - t0) * (t2 - t1))
    )


def instantaneous_rate(traj: Trajectory, t: float) -> RateEstimate:
    """Tangent estimate of dX/dt at time ``t`` within the sampled range."""
    ts, xs = _points(traj)
    if len(ts) < 2:
        raise InsufficientDataError(
            f"instantaneous rate needs at least 2 snapshots, have {len(ts)}"
        )
    if t < ts[0] or t > ts[-1]:
        raise ExtrapolationError(
            f"t = {t} h is outside the sampled range [{ts[0]}, {ts[-1]}]"
        )

    k = bisect_left(ts, t)
    if ts[k] == t and 0 < k < len(ts) - 1:
        value = _three_point_derivative(
            ts[k - 1], xs[k - 1], ts[k], xs[k], ts[k + 1], xs[k + 1]
        )
        interval = (ts[k - 1], ts[k + 1])
    elif t == ts[0]:
        value = (xs[1] - xs[0]) / (ts[1] - ts[0])
        interval = (ts[0], ts[1])
    elif t == ts[-1]:
        value = (xs[-1] - xs[-2]) / (ts[-1] - ts[-2])
        interval = (ts[-2], ts[-1])
    else:
        # Between samples: slope of the bracketing pair.
        value = (xs[k] - xs[k - 1]) / (ts[k] - ts[k - 1])
        interval = (ts[k - 1], ts[k])
    return RateEstimate(value=value, method=RateMethod.CENTRAL_DIFFERENCE, interval=interval)


def _unshift(coeffs: list[float], t0: float) -> list[float]:
    # Rewrite sum c_k (t - t0)^k as coefficients in plain powers of t.
    degree = len(coeffs) - 1
    out = [0.0] * (degree + 1)
    for k, c in enumerate(coeffs):
        for j in range(k + 1):
            out[j] += c * math.comb(k, j) * (-t0) ** (k - j)
    return out


def fit_polynomial(traj: Trajectory, degree: int) -> PolyFit:
    """Least-squares polynomial fit of X(t); degree must be 1, 2, or 3."""
    if degree not in (1, 2, 3):
        raise ValueError(f"fit degree must be 1, 2, or 3, got {degree}")
    ts, xs = _points(traj)
    if len(ts) < degree + 1:
        raise InsufficientDataError(
            f"degree-{degree} fit needs at least {degree + 1} snapshots, have {len(ts)}"
        )
    u = np.asarray(ts, dtype=float) - ts[0]
    y = np.asarray(xs, dtype=float)
    design = np.vander(u, N=degree + 1, increasing=True)
    gram = design.T @ design
    rhs = design.T @ y
    shifted = np.linalg.solve(gram, rhs)
    residual = y - design @ shifted
    coeffs = _unshift([float(c) for c in shifted], ts[0])
    return PolyFit(
        degree=degree,
        coefficients=tuple(coeffs),
        residual_sum_of_squares=float(residual @ residual),
    )


def fit_derivative_rate(traj: Trajectory, degree: int, t: float) -> RateEstimate:
    """Rate from differentiating a fitted polynomial at time ``t``."""
    fit = fit_polynomial(traj, degree)
    ts, _ = _points(traj)
    return RateEstimate(
        value=fit.derivative_at(t),
        method=RateMethod.FIT_DERIVATIVE,
        interval=(ts[0], ts[-1]),
    )


def effort(alpha: float, rate: RateEstimate) -> EffortEstimate:
    """Effort E = alpha * dX/dt for a positive ability coefficient."""
    if not (alpha > 0):
        raise InvalidCoefficientError(f"ability coefficient must be > 0, got {alpha}")
    return EffortEstimate(alpha=alpha, rate=rate, effort=alpha * rate.value)


def interval_rates(traj: Trajectory) -> list[RateEstimate]:
    """Secant rates over each consecutive snapshot pair."""
    ts, _ = _points(traj)
    return [secant_rate(traj, a, b) for a, b in zip(ts, ts[1:])]


def classify_trend(traj: Trajectory, tolerance: float = 1e-6) -> TrendClass:
    """Shape of the improvement curve from consecutive secant slopes.

    All slopes within tolerance of their mean and the mean above tolerance is
    uniform (constant positive) improvement; otherwise all-positive slopes are
    positive improvement, all-negative slopes negative, anything else mixed.
    """
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    if len(traj.snapshots) < 2:
        raise InsufficientDataError(
            f"trend classification needs at least 2 snapshots, have {len(traj.snapshots)}"
        )
    slopes = [r.value for r in interval_rates(traj)]
    mean = sum(slopes) / len(slopes)
    if all(abs(s - mean) <= tolerance for s in slopes) and mean > tolerance:
        return TrendClass.UNIFORM
    if all(s > tolerance for s in slopes):
        return TrendClass.POSITIVE
    if all(s < -tolerance for s in slopes):
        return TrendClass.NEGATIVE
    return TrendClass.MIXED
