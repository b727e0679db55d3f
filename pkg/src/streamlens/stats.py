"""Sample moments and auto-/cross-correlation estimators.

All estimators use the divisor-T (biased) convention throughout:

    mean = (1/T) sum x_t
    var  = (1/T) sum (x_t - mean)^2
    gamma_hat(k) = (1/T) sum_{t=1..T-k} (x_t - xbar)(y_{t+k} - ybar)

Two correlation normalizations are exposed: "standard" divides by the
product of the sample standard deviations, "paper" divides by gamma_hat(0)
of the pair itself (not bounded by 1 for cross-correlation).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import TimeSeries


def _values(series):
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


@dataclass(frozen=True)
class CorrelationFunction:
    lags: np.ndarray
    values: np.ndarray
    kind: str  # "auto" | "cross"
    normalization: str  # "none" | "standard" | "paper"

    def __post_init__(self):
        object.__setattr__(self, "lags", np.asarray(self.lags, dtype=np.int64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.lags.shape != self.values.shape:
            raise ValueError("lags and values must have equal length")


def sample_moments(series):
    """Divisor-T sample mean and variance."""
    x = _values(series)
    mean = float(x.mean())
    var = float(np.mean((x - mean) ** 2))
    return mean, var


def _default_max_lag(T):
    return T // 4


def autocovariance(series, max_lag=None) -> CorrelationFunction:
    x = _values(series)
    T = x.shape[0]
    if max_lag is None:
        max_lag = _default_max_lag(T)
    if not (0 <= max_lag < T):
        raise ValueError("max_lag must satisfy 0 <= max_lag < T")
    xc = x - x.mean()
    vals = kernels.cross_cov(xc, xc, int(max_lag))
    return CorrelationFunction(np.arange(max_lag + 1), vals, "auto", "none")


def autocorrelation(series, max_lag=None) -> CorrelationFunction:
    cov = autocovariance(series, max_lag)
    g0 = cov.values[0]
    if g0 <= 0.0:
        raise ValueError("zero variance")
    return CorrelationFunction(cov.lags, cov.values / g0, "auto", "standard")


def cross_covariance(x, y, max_lag=None) -> CorrelationFunction:
    """gamma_hat_xy(k) on the symmetric lag range -max_lag..max_lag.

    Negative lags mirror through the swapped pair: gamma_xy(-k) = gamma_yx(k).
    """
    xv, yv = _values(x), _values(y)
    if xv.shape[0] != yv.shape[0]:
        raise ValueError("series length mismatch")
    T = xv.shape[0]
    if max_lag is None:
        max_lag = _default_max_lag(T)
    if not (0 <= max_lag < T):
        raise ValueError("max_lag must satisfy 0 <= |max_lag| < T")
    xc = xv - xv.mean()
    yc = yv - yv.mean()
    pos = kernels.cross_cov(xc, yc, int(max_lag))
    neg = kernels.cross_cov(yc, xc, int(max_lag))
    lags = np.arange(-max_lag, max_lag + 1)
    vals = np.concatenate([neg[1:][::-1], pos])
    return CorrelationFunction(lags, vals, "cross", "none")


def cross_correlation(x, y, max_lag=None, normalization="standard") -> CorrelationFunction:
    cov = cross_covariance(x, y, max_lag)
    if normalization == "standard":
        _, vx = sample_moments(x)
        _, vy = sample_moments(y)
        denom = np.sqrt(vx * vy)
    elif normalization == "paper":
        denom = cov.values[cov.values.shape[0] // 2]  # gamma_hat_xy(0)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    if denom == 0.0:
        raise ValueError("zero denominator")
    return CorrelationFunction(cov.lags, cov.values / denom, "cross", normalization)
