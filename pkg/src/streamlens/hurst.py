"""Rescaled-range (R/S) Hurst estimation with a prefix-time trajectory.

Per window size n the series is split into floor(T/n) non-overlapping
blocks; each block contributes R/S where S is the divisor-T standard
deviation and R the range of the cumulative mean deviations. The Hurst
exponent is the slope of log(R/S) against log(n). Series shorter than 200
samples get a reliability warning rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import TimeSeries

SHORT_SERIES = 200
SHORT_SERIES_WARNING = (
    "series shorter than 200 elements; R/S needs at least 200 elements "
    "and better more than 300 for reliable estimates"
)


def _values(series):
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


@dataclass(frozen=True)
class RSCurve:
    window_sizes: np.ndarray
    rs: np.ndarray
    counts: np.ndarray  # blocks averaged per window size
    series_length: int

    def __post_init__(self):
        if np.any(np.diff(self.window_sizes) <= 0):
            raise ValueError("window sizes must be strictly increasing")
        if np.any(self.rs <= 0):
            raise ValueError("rescaled ranges must be positive")


@dataclass(frozen=True)
class HurstFit:
    H: float
    intercept: float
    r_squared: float
    fit_range: tuple
    warning: Optional[str] = None


@dataclass(frozen=True)
class RollingHurst:
    prefix_lengths: np.ndarray
    values: np.ndarray
    break_time: Optional[int]  # prefix length of the largest drop, if any
    break_drop: float


def rescaled_range(segment):
    """(R, S) of one segment; raises on zero variance."""
    x = _values(segment)
    if x.shape[0] < 2:
        raise ValueError("segment must have at least 2 samples")
    dev = x - x.mean()
    S = float(np.sqrt(np.mean(dev * dev)))
    if S <= 0.0:
        raise ValueError("zero variance")
    y = np.cumsum(dev)
    R = float(y.max() - y.min())
    return R, S


def default_window_sizes(T: int, n_points: int = 20):
    """About 20 log-spaced integer window sizes in [8, T/2]."""
    return np.unique(np.geomspace(8, T // 2, n_points).round().astype(np.int64))


def rs_curve(series, window_sizes=None) -> RSCurve:
    x = _values(series)
    T = x.shape[0]
    if T < 64:
        raise ValueError("series must have at least 64 samples")
    if window_sizes is None:
        window_sizes = default_window_sizes(T)
    else:
        window_sizes = np.unique(np.asarray(window_sizes, dtype=np.int64))
        if np.any(window_sizes < 2) or np.any(window_sizes > T):
            raise ValueError("window sizes must lie in [2, T]")
    rs, counts = kernels.rs_blocks(np.ascontiguousarray(x), window_sizes)
    ok = counts > 0
    return RSCurve(window_sizes[ok], rs[ok], counts[ok], T)


def fit_hurst(curve: RSCurve, fit_range=None) -> HurstFit:
    """OLS of log(R/S) on log(n); the slope estimates the Hurst exponent."""
    ns = curve.window_sizes
    rs = curve.rs
    if fit_range is not None:
        lo, hi = fit_range
        keep = (ns >= lo) & (ns <= hi)
        ns, rs = ns[keep], rs[keep]
    if ns.shape[0] < 4:
        raise ValueError("need at least 4 curve points to fit")
    lx = np.log(ns.astype(np.float64))
    ly = np.log(rs)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    warning = None
    if curve.series_length < SHORT_SERIES:
        warning = SHORT_SERIES_WARNING
    elif not (0.0 < slope < 1.0):
        warning = f"estimated H={slope:.3f} outside (0, 1); interpret with care"
    return HurstFit(float(slope), float(intercept), r2,
                    (int(ns[0]), int(ns[-1])), warning)


def rolling_hurst(series, min_prefix: int = 64, drop_threshold: float = 0.05) -> RollingHurst:
    """Hurst trajectory H(t) over growing prefixes, with a break report.

    The break time is the prefix length of the largest single-step drop in
    H(t), reported only when that drop exceeds ``drop_threshold``.
    """
    x = _values(series)
    T = x.shape[0]
    if T < min_prefix:
        raise ValueError(f"series must have at least min_prefix={min_prefix} samples")
    xc = np.ascontiguousarray(x)
    prefixes = np.arange(min_prefix, T + 1, dtype=np.int64)
    values = np.empty(prefixes.shape[0])
    for i, t in enumerate(prefixes):
        ns = default_window_sizes(int(t))
        rs, counts = kernels.rs_blocks(xc[:t], ns)
        ok = counts > 0
        lx = np.log(ns[ok].astype(np.float64))
        ly = np.log(rs[ok])
        values[i] = np.polyfit(lx, ly, 1)[0]
    drops = values[:-1] - values[1:]
    break_time = None
    break_drop = 0.0
    if drops.size:
        k = int(np.argmax(drops))
        if drops[k] > drop_threshold:
            break_time = int(prefixes[k + 1])
            break_drop = float(drops[k])
    return RollingHurst(prefixes, values, break_time, break_drop)
