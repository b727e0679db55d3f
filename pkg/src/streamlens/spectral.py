"""Discrete Fourier spectrum and the windowed Gabor transform.

The fast path is an iterative radix-2 transform for power-of-two lengths;
any other length falls back to the direct O(N^2) definition. Forward kernel
is exp(-i 2 pi m t / T), unnormalized; the inverse carries 1/N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import TimeSeries


def fourier_coefficients(values):
    """Forward transform X_m = sum_t x_t exp(-i 2 pi m t / T)."""
    x = np.asarray(values, dtype=np.complex128)
    n = x.shape[0]
    if n >= 2 and n & (n - 1) == 0:
        return kernels.fft_pow2(x)
    return kernels.dft_direct(x)


def inverse_coefficients(coeffs):
    """Inverse transform x_t = (1/N) sum_m X_m exp(+i 2 pi m t / T)."""
    X = np.asarray(coeffs, dtype=np.complex128)
    n = X.shape[0]
    if n >= 2 and n & (n - 1) == 0:
        return kernels.fft_pow2(X, invert=True) / n
    return kernels.dft_direct(X, invert=True) / n


@dataclass(frozen=True)
class Spectrum:
    """One-sided amplitude/phase representation of a real series."""

    frequencies: np.ndarray  # cycles per time unit, in [0, 0.5/step]
    amplitudes: np.ndarray  # |X_m|, unnormalized
    phases: np.ndarray  # arg(X_m) in (-pi, pi]
    length: int  # original series length
    step: float

    def __post_init__(self):
        if np.any(self.amplitudes < 0):
            raise ValueError("amplitudes must be nonnegative")

    def coefficients(self):
        return self.amplitudes * np.exp(1j * self.phases)

    def scaled_amplitudes(self):
        """Display scaling 2|X_m|/T (the DC bin is |X_0|/T)."""
        out = 2.0 * self.amplitudes / self.length
        out[0] /= 2.0
        if self.length % 2 == 0:
            out[-1] /= 2.0  # Nyquist bin is not doubled
        return out


def dft(series: TimeSeries) -> Spectrum:
    """One-sided spectrum of the series at the DFT bin frequencies m/(T h)."""
    T = len(series)
    if T < 2:
        raise ValueError("series must have at least 2 samples")
    X = fourier_coefficients(series.values)
    half = T // 2
    Xh = X[: half + 1]
    freqs = np.arange(half + 1) / (T * series.step)
    return Spectrum(freqs, np.abs(Xh), np.angle(Xh), T, series.step)


def inverse_dft(spectrum: Spectrum) -> TimeSeries:
    """Reconstruct the real series from its one-sided spectrum."""
    T = spectrum.length
    half = T // 2
    X = np.zeros(T, dtype=np.complex128)
    Xh = spectrum.coefficients()
    X[: half + 1] = Xh
    if T % 2 == 0:
        X[half + 1 :] = np.conj(Xh[1:half][::-1])
    else:
        X[half + 1 :] = np.conj(Xh[1 : half + 1][::-1])
    x = inverse_coefficients(X)
    return TimeSeries(x.real, start=0.0, step=spectrum.step)


@dataclass(frozen=True)
class GaborField:
    """Windowed transform G(nu, l, s) on a frequency x location grid."""

    frequencies: np.ndarray
    locations: np.ndarray
    window_width: float
    coefficients: np.ndarray  # complex, (frequencies, locations)
    step: float

    def __post_init__(self):
        if self.coefficients.shape != (len(self.frequencies), len(self.locations)):
            raise ValueError("coefficient matrix does not match the grids")


def gabor(series: TimeSeries, frequencies=None, locations=None,
          window_width=None) -> GaborField:
    """G(nu,l,s) = h sum_t x_t exp(-(t-l)^2/s^2) exp(-i 2 pi nu t).

    Defaults: DFT bin frequencies, every sample as a location, and a window
    width of T/10 samples. ``t`` is the sample index; frequencies are in
    cycles per sample.
    """
    T = len(series)
    if frequencies is None:
        frequencies = np.arange(T // 2 + 1) / T
    else:
        frequencies = np.asarray(frequencies, dtype=np.float64)
    if locations is None:
        locations = np.arange(T, dtype=np.float64)
    else:
        locations = np.asarray(locations, dtype=np.float64)
    if frequencies.size == 0 or locations.size == 0:
        raise ValueError("frequency and location grids must be non-empty")
    if window_width is None:
        window_width = T / 10.0
    if not (window_width > 0):
        raise ValueError("window_width must be positive")
    coeffs = kernels.gabor_accumulate(
        series.values, frequencies, locations, float(window_width), series.step
    )
    return GaborField(frequencies, locations, float(window_width), coeffs, series.step)
