"""Multifractal spectrum estimation by three routes.

* oscillation: q-th moments of local ranges over closed dyadic cells,
  Z(q,j) = sum_k R_k^q (unnormalized, the default) or 2^-j sum_k R_k^q
  (normalized); tau(q) is the regression slope of log Z against
  log(2^-j), with q = 0 handled by cell counting.
* mfdfa: detrended fluctuation moments F_q(s) of the accumulated profile
  over segments taken from both ends; h(q) = slope of log F_q vs log s,
  tau(q) = q h(q) - 1.
* wtmm: partition function over the cone-filtered skeleton of wavelet
  modulus maxima; line strengths are |W|/sqrt(s), which removes the
  L2-normalization offset so slopes read directly in Holder units.

Spectra come out of the Legendre transform: d(h) = min_q (h q - tau(q))
for the unnormalized convention, min_q (1 - tau(q) + h q) for the
normalized one (the two coincide because tau differs by exactly 1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .core import TimeSeries, profile
from .cwt import Wavelet, WaveletField, cwt, make_wavelet

NEGATIVE_Q_FLOOR = 1e-12
UNNORMALIZED = "unnormalized"
NORMALIZED = "normalized"


def _values(series):
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def default_q_grid(lo: float = -5.0, hi: float = 5.0, step: float = 0.25):
    n = int(round((hi - lo) / step))
    return lo + step * np.arange(n + 1)


@dataclass(frozen=True)
class ScalingFit:
    """Per-q partition values, fitted scaling exponents, and diagnostics.

    ``log_scales`` is the regression abscissa: log of the dyadic cell width
    2^-j for the oscillation route, log of the scale in samples for mfdfa
    and wtmm. ``hq`` carries the generalized Hurst exponents for mfdfa.
    """

    q_grid: np.ndarray
    log_scales: np.ndarray
    logZ: np.ndarray  # (q, scales)
    tau: np.ndarray
    fit_r2: np.ndarray
    convention: str
    method: str
    hq: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.logZ.shape != (self.q_grid.shape[0], self.log_scales.shape[0]):
            raise ValueError("logZ shape does not match the grids")
        dtau = np.diff(self.tau)
        if dtau.size and dtau.min() < -1e-6:
            warnings.warn(
                f"tau(q) decreases by {-dtau.min():.2e}; partition-function "
                "concavity is violated beyond tolerance"
            )


@dataclass(frozen=True)
class MultifractalSpectrum:
    """(h, d(h)) pairs with the q that produced each point."""

    hs: np.ndarray
    ds: np.ndarray
    qs: np.ndarray  # q attaining each point
    boundary: np.ndarray  # True where the q-grid edge limited the point
    method: str

    @property
    def points(self):
        return list(zip(self.hs, self.ds, self.qs))

    def width(self, min_d: float = -np.inf) -> float:
        sel = self.ds >= min_d
        return float(self.hs[sel].max() - self.hs[sel].min())


def _ols_rows(x, Y):
    """Slope, intercept, r^2 of each row of Y against x."""
    xc = x - x.mean()
    sxx = float(xc @ xc)
    yc = Y - Y.mean(axis=1, keepdims=True)
    slope = (yc @ xc) / sxx
    intercept = Y.mean(axis=1) - slope * x.mean()
    resid = yc - slope[:, None] * xc[None, :]
    ss_res = np.sum(resid * resid, axis=1)
    ss_tot = np.sum(yc * yc, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        r2 = np.where(ss_tot > 0, 1.0 - ss_res / ss_tot, 1.0)
    return slope, intercept, r2


def _moment_sums(values, q_grid, count):
    """log of sum(values^q) with the counting rule at q = 0 and the
    negative-q floor; ``count`` is the number of contributing items."""
    out = np.empty(q_grid.shape[0])
    floored = np.maximum(values, NEGATIVE_Q_FLOOR)
    logs = np.log(floored)
    for qi, q in enumerate(q_grid):
        if q == 0.0:
            out[qi] = np.log(count)
        elif q < 0:
            out[qi] = _logsumexp(q * logs)
        else:
            total = np.sum(values ** q)
            out[qi] = np.log(total) if total > 0 else np.log(NEGATIVE_Q_FLOOR)
    return out


def _logsumexp(a):
    m = a.max()
    return m + np.log(np.sum(np.exp(a - m)))


def oscillation_structure(series, q_grid=None, levels=None,
                          convention: str = UNNORMALIZED) -> ScalingFit:
    """Range-based partition function on closed dyadic cells.

    Cell k at level j covers samples [k*w, (k+1)*w] with w = floor(T/2^j)
    (adjacent cells share a boundary sample; the last is clipped). Default
    levels keep at least 16 cells and at least 16 samples per cell.
    """
    x = _values(series)
    T = x.shape[0]
    if q_grid is None:
        q_grid = default_q_grid()
    else:
        q_grid = np.asarray(q_grid, dtype=np.float64)
    if levels is None:
        jmax = int(np.floor(np.log2(T))) - 4
        levels = np.arange(4, jmax + 1, dtype=np.int64)
    else:
        levels = np.asarray(sorted(levels), dtype=np.int64)
    if levels.shape[0] < 3:
        raise ValueError("too few levels (< 3) for regression")
    if T < 2 ** (int(levels[-1]) + 2):
        raise ValueError("series too short for the deepest level requested")
    if convention not in (UNNORMALIZED, NORMALIZED):
        raise ValueError(f"unknown convention {convention!r}")

    xc = np.ascontiguousarray(x)
    logZ = np.empty((q_grid.shape[0], levels.shape[0]))
    for ji, j in enumerate(levels):
        ncells = 2 ** int(j)
        R = kernels.dyadic_ranges(xc, ncells)
        if not np.any(R > 0):
            raise ValueError("degenerate ranges: all cell ranges are zero")
        logZ[:, ji] = _moment_sums(R, q_grid, ncells)
        if convention == NORMALIZED:
            logZ[:, ji] -= j * np.log(2.0)
    log_scales = -levels.astype(np.float64) * np.log(2.0)
    tau, _, r2 = _ols_rows(log_scales, logZ)
    return ScalingFit(q_grid, log_scales, logZ, tau, r2, convention, "oscillation")


def legendre_spectrum(fit: ScalingFit, h_points: int = 64) -> MultifractalSpectrum:
    """Discrete Legendre transform of tau(q).

    The h grid spans the range of finite-difference slopes of tau; points
    whose minimum is attained at a q-grid endpoint are flagged as
    boundary-limited.
    """
    q = fit.q_grid
    tau = fit.tau
    if q.shape[0] < 5:
        raise ValueError("need tau on at least 5 q points")
    if not np.all(np.isfinite(tau)):
        raise ValueError("non-finite tau values")
    slopes = np.gradient(tau, q)
    hs = np.linspace(slopes.min(), slopes.max(), h_points)
    if fit.convention == NORMALIZED:
        obj = 1.0 - tau[None, :] + hs[:, None] * q[None, :]
    else:
        obj = hs[:, None] * q[None, :] - tau[None, :]
    kmin = np.argmin(obj, axis=1)
    ds = obj[np.arange(h_points), kmin]
    boundary = (kmin == 0) | (kmin == q.shape[0] - 1)
    return MultifractalSpectrum(hs, ds, q[kmin], boundary, fit.method)


def default_mfdfa_scales(T: int, poly_order: int = 1, n_points: int = 16):
    lo = max(8, poly_order + 2)
    return np.unique(np.geomspace(lo, T // 4, n_points).round().astype(np.int64))


def mfdfa(series, q_grid=None, scale_range=None, poly_order: int = 1):
    """Multifractal detrended fluctuation analysis.

    Returns (ScalingFit, MultifractalSpectrum). The series is accumulated
    into its mean-centered profile, split into 2*floor(T/s) segments (from
    the start and from the end), and detrended per segment by a degree
    ``poly_order`` polynomial. The spectrum uses alpha = h + q h' and
    f(alpha) = q (alpha - h) + 1 with finite-difference h'.
    """
    x = _values(series)
    T = x.shape[0]
    if T < 512:
        raise ValueError("series must have at least 512 samples")
    if q_grid is None:
        q_grid = default_q_grid()
    else:
        q_grid = np.asarray(q_grid, dtype=np.float64)
    if scale_range is None:
        scales = default_mfdfa_scales(T, poly_order)
    else:
        scales = np.unique(np.asarray(scale_range, dtype=np.int64))
        if scales[0] < poly_order + 2 or scales[-1] > T // 4:
            raise ValueError("scales must lie within [poly_order + 2, T/4]")
    y = np.ascontiguousarray(
        profile(series).values if isinstance(series, TimeSeries)
        else np.cumsum(x - x.mean())
    )

    logF = np.empty((q_grid.shape[0], scales.shape[0]))
    logZ = np.empty_like(logF)
    floored = False
    for si, s in enumerate(scales):
        u = np.arange(int(s)) - (int(s) - 1) / 2.0
        design = np.vander(u, poly_order + 1)
        pinv = np.linalg.pinv(design)
        F2 = kernels.mfdfa_fluct(y, int(s), np.ascontiguousarray(design),
                                 np.ascontiguousarray(pinv))
        if np.any(F2 < NEGATIVE_Q_FLOOR):
            floored = True
            F2 = np.maximum(F2, NEGATIVE_Q_FLOOR)
        logs = np.log(F2)
        for qi, q in enumerate(q_grid):
            if q == 0.0:
                logF[qi, si] = 0.5 * np.mean(logs)
                logZ[qi, si] = np.log(F2.shape[0])
            else:
                m = _logsumexp(0.5 * q * logs)
                logF[qi, si] = (m - np.log(F2.shape[0])) / q
                logZ[qi, si] = m
    if floored:
        warnings.warn(
            f"segments with detrended variance below {NEGATIVE_Q_FLOOR} were "
            "floored; negative-q moments are unreliable"
        )
    log_scales = np.log(scales.astype(np.float64))
    hq, _, r2 = _ols_rows(log_scales, logF)
    tau = q_grid * hq - 1.0
    fit = ScalingFit(q_grid, log_scales, logZ, tau, r2, UNNORMALIZED, "mfdfa", hq=hq)

    hprime = np.gradient(hq, q_grid)
    alpha = hq + q_grid * hprime
    falpha = q_grid * (alpha - hq) + 1.0
    boundary = np.zeros(q_grid.shape[0], dtype=bool)
    boundary[0] = boundary[-1] = True
    spectrum = MultifractalSpectrum(alpha, falpha, q_grid, boundary, "mfdfa")
    return fit, spectrum


def find_modulus_maxima(field, scale_index: int):
    """Locations of wavelet modulus maxima at one scale.

    A point qualifies when |W| is >= both neighbors and > at least one of
    them, so both points of a two-sample plateau qualify.
    """
    if isinstance(field, WaveletField):
        row = np.abs(field.coefficients[scale_index])
    else:
        row = np.abs(np.asarray(field)[scale_index]).astype(np.float64)
    if row.shape[0] < 3:
        raise ValueError("need at least 3 locations")
    return kernels.modulus_maxima(np.ascontiguousarray(row))


@dataclass(frozen=True)
class MaximaLine:
    """One chained curve of modulus maxima, ordered by increasing scale."""

    scale_indices: np.ndarray
    locations: np.ndarray
    moduli: np.ndarray

    def __len__(self):
        return self.scale_indices.shape[0]


@dataclass(frozen=True)
class Skeleton:
    lines: tuple
    source: WaveletField = field(repr=False, default=None)

    def __len__(self):
        return len(self.lines)


def build_skeleton(field: WaveletField, min_length: int = 4,
                   coi_filter: bool = True) -> Skeleton:
    """Chain modulus maxima across scales, largest scale downward.

    Each line extends to the nearest unclaimed maximum at the next-smaller
    scale within +-max(1, ceil(0.5 s)) locations; unmatched maxima start new
    lines and lines shorter than ``min_length`` scale steps are discarded.
    With ``coi_filter`` (default) maxima inside the cone of influence are
    ignored, which keeps zero-padding edge artifacts out of the skeleton.
    """
    W = field.coefficients
    n_scales, T = W.shape
    if n_scales < 8:
        raise ValueError("field must have at least 8 scales")
    mod = np.abs(W)
    per_scale = []
    for i in range(n_scales):
        locs = kernels.modulus_maxima(np.ascontiguousarray(mod[i]))
        if coi_filter and locs.size:
            locs = locs[field.scales[i] <= field.coi[locs]]
        per_scale.append(locs)

    lines = []  # mutable: list of [(scale_idx, loc), ...] built downward
    active = []  # (line_idx, current_loc), kept sorted by location
    for i in range(n_scales - 1, -1, -1):
        locs = per_scale[i]
        used = np.zeros(locs.shape[0], dtype=bool)
        window = max(1, int(np.ceil(0.5 * field.scales[i])))
        new_active = []
        for line_idx, cur in active:
            if locs.size == 0:
                continue
            pos = int(np.searchsorted(locs, cur))
            best = -1
            best_d = window + 1
            for cand in (pos - 1, pos, pos + 1):
                if 0 <= cand < locs.shape[0] and not used[cand]:
                    d = abs(int(locs[cand]) - cur)
                    if d < best_d:
                        best_d = d
                        best = cand
            if best >= 0 and best_d <= window:
                used[best] = True
                loc = int(locs[best])
                lines[line_idx].append((i, loc))
                new_active.append((line_idx, loc))
        for k in range(locs.shape[0]):
            if not used[k]:
                loc = int(locs[k])
                lines.append([(i, loc)])
                new_active.append((len(lines) - 1, loc))
        new_active.sort(key=lambda item: item[1])
        active = new_active

    kept = []
    for pts in lines:
        if len(pts) < min_length:
            continue
        pts = pts[::-1]  # ascending scale order
        si = np.array([p[0] for p in pts], dtype=np.int64)
        lc = np.array([p[1] for p in pts], dtype=np.int64)
        kept.append(MaximaLine(si, lc, mod[si, lc]))
    return Skeleton(tuple(kept), field)


def wtmm_partition(field: WaveletField, skeleton: Skeleton, q_grid):
    """Structure function over maxima lines.

    Z(q,s) sums, over lines alive at scale s, the q-th power of the supremum
    of |W|/sqrt(s') along the line at scales s' <= s; Z(0,s) is the live-line
    count. Returns (Z, live_counts).
    """
    q_grid = np.asarray(q_grid, dtype=np.float64)
    n_scales = field.scales.shape[0]
    strength_norm = np.sqrt(field.scales)
    Z = np.zeros((q_grid.shape[0], n_scales))
    count = np.zeros(n_scales, dtype=np.int64)
    neg = q_grid < 0
    for line in skeleton.lines:
        run = 0.0
        for si, m in zip(line.scale_indices, line.moduli):
            run = max(run, m / strength_norm[si])
            count[si] += 1
            v = max(run, NEGATIVE_Q_FLOOR)
            lv = np.log(v)
            Z[~neg, si] += v ** q_grid[~neg]
            Z[neg, si] += np.exp(q_grid[neg] * lv)
    Z[q_grid == 0.0, :] = count
    return Z, count


def wtmm_spectrum(series, wavelet="mexican_hat", q_grid=None, scales=None,
                  fit_min_scale: float = 4.0, fit_min_lines: int = 8):
    """WTMM scaling function and Legendre spectrum.

    Returns (ScalingFit, MultifractalSpectrum). The fit uses scale-grid
    points holding at least ``fit_min_lines`` live lines and scales of at
    least ``fit_min_scale`` samples (sub-sample quantization distorts line
    suprema below that).
    """
    if isinstance(wavelet, str):
        wavelet = make_wavelet(wavelet)
    if q_grid is None:
        q_grid = default_q_grid()
    else:
        q_grid = np.asarray(q_grid, dtype=np.float64)
    fld = cwt(series, wavelet, scales)
    skel = build_skeleton(fld)
    if len(skel) == 0:
        raise ValueError("empty skeleton")
    Z, count = wtmm_partition(fld, skel, q_grid)
    mask = (count >= fit_min_lines) & (fld.scales >= fit_min_scale)
    if int(mask.sum()) < 5:
        raise ValueError("fewer than 5 scales alive in the fit range")
    log_scales = np.log(fld.scales[mask])
    logZ = np.log(np.maximum(Z[:, mask], NEGATIVE_Q_FLOOR ** 6))
    tau, _, r2 = _ols_rows(log_scales, logZ)
    fit = ScalingFit(q_grid, log_scales, logZ, tau, r2, UNNORMALIZED, "wtmm")
    return fit, legendre_spectrum(fit)


@dataclass(frozen=True)
class HolderEstimate:
    h: float
    flags: tuple
    scales_used: np.ndarray

    @property
    def moment_saturated(self):
        return "moment-saturated" in self.flags


def holder_at_point(field: WaveletField, location: int, n_scales: int = 8,
                    min_scale: float = 4.0) -> HolderEstimate:
    """Pointwise Holder exponent from small-scale wavelet decay.

    Fits log of the supremum of |W| over the cone |l - location| <= s
    against log s on the smallest ``n_scales`` trusted scales, then removes
    the 1/2 offset of the L2-normalized transform. Estimates at or above
    the wavelet's vanishing-moment count (minus 0.1) are flagged
    "moment-saturated"; an all-zero column is flagged "zero-coefficients"
    and yields nan.
    """
    T = field.locations.shape[0]
    location = int(location)
    usable = (field.scales >= min_scale) & (field.scales <= field.coi[location])
    idx = np.nonzero(usable)[0][:n_scales]
    if idx.shape[0] < n_scales:
        raise ValueError(
            f"location {location} lacks {n_scales} trusted scales above {min_scale}"
        )
    sups = np.empty(idx.shape[0])
    for k, i in enumerate(idx):
        r = int(np.ceil(field.scales[i]))
        lo, hi = max(0, location - r), min(T, location + r + 1)
        sups[k] = np.abs(field.coefficients[i, lo:hi]).max()
    if np.all(sups < 1e-250):
        return HolderEstimate(float("nan"), ("zero-coefficients",), field.scales[idx])
    slope = np.polyfit(np.log(field.scales[idx]), np.log(np.maximum(sups, 1e-300)), 1)[0]
    h = float(slope - 0.5)
    flags = []
    if h >= field.wavelet.vanishing_moments - 0.1:
        flags.append("moment-saturated")
    return HolderEstimate(h, tuple(flags), field.scales[idx])
