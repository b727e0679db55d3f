"""Pairwise comparison of wavelet fields: modulus difference, phase
difference, and the cross-wavelet transform W_x* W_y."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cwt import WaveletField


@dataclass(frozen=True)
class CrossField:
    scales: np.ndarray
    locations: np.ndarray
    values: np.ndarray  # real for diffmod/phasediff, complex for crwt
    kind: str  # "diffmod" | "phasediff" | "crwt"
    wavelet_name: str


def _check_compatible(wx: WaveletField, wy: WaveletField):
    if wx.wavelet.name != wy.wavelet.name:
        raise ValueError("wavelet mismatch between fields")
    if not (np.array_equal(wx.scales, wy.scales)
            and np.array_equal(wx.locations, wy.locations)):
        raise ValueError("grid mismatch between fields")


def diffmod(wx: WaveletField, wy: WaveletField) -> CrossField:
    """Elementwise |W_x - W_y|."""
    _check_compatible(wx, wy)
    vals = np.abs(wx.coefficients - wy.coefficients)
    return CrossField(wx.scales, wx.locations, vals, "diffmod", wx.wavelet.name)


def _wrap_phase(phi):
    """Wrap to the principal interval (-pi, pi]."""
    out = np.mod(-phi + np.pi, 2.0 * np.pi)
    return np.pi - out


def phase_diff(wx: WaveletField, wy: WaveletField) -> CrossField:
    """Principal value of arg(W_x) - arg(W_y); needs a complex wavelet."""
    _check_compatible(wx, wy)
    if not wx.wavelet.is_complex:
        raise ValueError("phase requires complex wavelet")
    delta = np.angle(wx.coefficients) - np.angle(wy.coefficients)
    return CrossField(wx.scales, wx.locations, _wrap_phase(delta), "phasediff",
                      wx.wavelet.name)


def crwt(wx: WaveletField, wy: WaveletField) -> CrossField:
    """Cross-wavelet transform W_x*(s,l) W_y(s,l).

    Its modulus factors as |W_x||W_y| and its argument is phi_y - phi_x; for
    identical inputs it reduces to the scalogram.
    """
    _check_compatible(wx, wy)
    vals = np.conj(wx.coefficients) * wy.coefficients
    return CrossField(wx.scales, wx.locations, vals, "crwt", wx.wavelet.name)
