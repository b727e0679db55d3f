"""Mother wavelets and the continuous wavelet transform.

W(s,l) = (h/sqrt(s)) sum_t x_t psi*((t-l)/s) on a log-spaced scale grid,
with zero padding outside the series and an explicit cone of influence.
Scales and locations are measured in samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .core import TimeSeries

MORLET_OMEGA0 = kernels.MORLET_OMEGA0


def _gaussian_wave(t):
    t = np.asarray(t, dtype=np.float64)
    return -t * np.exp(-0.5 * t * t)


def _mexican_hat(t):
    t = np.asarray(t, dtype=np.float64)
    return (1.0 - t * t) * np.exp(-0.5 * t * t)


def _haar(t):
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    out[(t >= 0.0) & (t < 0.5)] = 1.0
    out[(t >= 0.5) & (t < 1.0)] = -1.0
    return out


def _morlet(t):
    # admissibility correction exp(-omega0^2/2) ~ 1.5e-8 keeps the mean zero
    t = np.asarray(t, dtype=np.float64)
    kappa = np.exp(-0.5 * MORLET_OMEGA0 ** 2)
    return np.pi ** -0.25 * (np.exp(1j * MORLET_OMEGA0 * t) - kappa) * np.exp(-0.5 * t * t)


@dataclass(frozen=True)
class Wavelet:
    """A mother wavelet: finite energy, (near-)zero mean."""

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    vanishing_moments: int
    is_complex: bool
    kernel_id: int
    coi_factor: float  # effective support radius in units of scale


# Gaussian-family coi factor: |psi| falls below ~1e-10 of its peak past
# 7 scale units, which keeps boundary clipping under the 1e-8 annihilation
# bound. The Haar support is exactly [0, 1), so only its right edge matters.
_COI_FACTOR = 7.0

_WAVELETS = {
    "gaussian_wave": Wavelet("gaussian_wave", _gaussian_wave, 1, False,
                             kernels.GAUSSIAN_WAVE, _COI_FACTOR),
    "mexican_hat": Wavelet("mexican_hat", _mexican_hat, 2, False,
                           kernels.MEXICAN_HAT, _COI_FACTOR),
    "haar": Wavelet("haar", _haar, 1, False, kernels.HAAR, 1.0),
    "morlet": Wavelet("morlet", _morlet, 1, True, kernels.MORLET, _COI_FACTOR),
}


def make_wavelet(name: str) -> Wavelet:
    try:
        return _WAVELETS[name]
    except KeyError:
        raise ValueError(
            f"unknown wavelet {name!r}; choose from {sorted(_WAVELETS)}"
        ) from None


@dataclass(frozen=True)
class WaveletField:
    """CWT coefficients on a scale x location grid.

    ``coi[l]`` is the largest scale at location l whose wavelet support stays
    inside the series; coefficients at larger scales are contaminated by the
    zero padding.
    """

    scales: np.ndarray
    locations: np.ndarray
    coefficients: np.ndarray  # complex, (scales, locations)
    wavelet: Wavelet
    coi: np.ndarray
    step: float

    def __post_init__(self):
        if np.any(self.scales <= 0) or np.any(np.diff(self.scales) <= 0):
            raise ValueError("scales must be strictly increasing and positive")
        if not np.all(np.isfinite(self.coefficients.real)) or not np.all(
            np.isfinite(self.coefficients.imag)
        ):
            raise ValueError("coefficients must be finite")

    def trusted(self):
        """Boolean mask (scales, locations): True outside the coi."""
        return self.scales[:, None] <= self.coi[None, :]


def default_scales(T: int, n: int = 64):
    """Log-spaced grid of n scales from 2 to T/4 samples."""
    return np.geomspace(2.0, T / 4.0, n)


def cwt(series: TimeSeries, wavelet: Wavelet, scales=None) -> WaveletField:
    T = len(series)
    if T < 8:
        raise ValueError("series must have at least 8 samples")
    if scales is None:
        scales = default_scales(T)
    else:
        scales = np.asarray(scales, dtype=np.float64)
        if np.any(scales <= 0):
            raise ValueError("scales must be positive")
        if np.any(scales > T):
            raise ValueError("scales must not exceed the series length")
        scales = np.sort(scales)
    coeffs = kernels.cwt_accumulate(
        series.values, wavelet.kernel_id, scales, series.step
    )
    locs = np.arange(T)
    if wavelet.name == "haar":
        # support [l, l + s): only the right boundary contaminates
        coi = (T - locs).astype(np.float64)
    else:
        coi = np.minimum(locs, T - 1 - locs) / wavelet.coi_factor
    return WaveletField(scales, locs, coeffs, wavelet, coi, series.step)


def scalogram(field: WaveletField, kind: str = "energy"):
    """|W|^2 (energy, default) or |W| (modulus)."""
    mod = np.abs(field.coefficients)
    if kind == "energy":
        return mod * mod
    if kind == "modulus":
        return mod
    raise ValueError(f"unknown scalogram kind {kind!r}")
