"""Synthetic processes with known exponents, used as test oracles.

All randomness comes from numpy's PCG64 generator seeded explicitly, so a
given (spec, seed) is bit-reproducible. The "fbm" kind yields the
stationary increment process (fractional Gaussian noise) of a fractional
Brownian motion: that is what the R/S and MF-DFA estimators consume, and
its cumulative sum is the fBm path itself. Davies-Harte circulant
embedding makes the increments exact in distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import TimeSeries

KINDS = ("white_noise", "brownian", "fbm", "binomial_cascade")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    length: int
    seed: int = 0
    hurst: Optional[float] = None  # fbm only
    p: Optional[float] = None  # binomial_cascade only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.length < 1:
            raise ValueError("length must be positive")
        if self.kind == "fbm":
            if self.hurst is None or not (0.0 < self.hurst < 1.0):
                raise ValueError("fbm needs 0 < hurst < 1")
            if self.length & (self.length - 1):
                raise ValueError("fbm length must be a power of two")
        if self.kind == "binomial_cascade":
            if self.p is None or not (0.0 < self.p < 1.0):
                raise ValueError("binomial_cascade needs 0 < p < 1")
            if self.p == 0.5:
                raise ValueError("p = 0.5 gives no multifractality")
            if self.length & (self.length - 1):
                raise ValueError("cascade length must be a power of two")


def white_noise(length: int, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(length)


def brownian(length: int, seed: int = 0) -> np.ndarray:
    return np.cumsum(white_noise(length, seed))


def fgn_autocovariance(H: float, max_lag: int) -> np.ndarray:
    k = np.arange(max_lag + 1, dtype=np.float64)
    return 0.5 * ((k + 1) ** (2 * H) - 2 * k ** (2 * H) + np.abs(k - 1) ** (2 * H))


def fbm_increments(H: float, length: int, seed: int = 0) -> np.ndarray:
    """Exact fractional Gaussian noise via Davies-Harte circulant embedding."""
    N = length
    gamma = fgn_autocovariance(H, N)
    circ = np.concatenate([gamma, gamma[N - 1 : 0 : -1]])  # length 2N
    lam = kernels.fft_pow2(circ.astype(np.complex128)).real
    # the circulant embedding of fGn is nonnegative-definite; clip fp dust
    if lam.min() < -1e-8 * lam.max():
        raise ValueError("circulant embedding produced negative eigenvalues")
    lam = np.clip(lam, 0.0, None)
    M = 2 * N
    rng = np.random.default_rng(seed)
    z1 = rng.standard_normal(N + 1)
    z2 = rng.standard_normal(N - 1)
    y = np.zeros(M, dtype=np.complex128)
    y[0] = np.sqrt(lam[0]) * z1[0]
    y[N] = np.sqrt(lam[N]) * z1[N]
    y[1:N] = np.sqrt(lam[1:N] / 2.0) * (z1[1:N] + 1j * z2)
    y[N + 1 :] = np.conj(y[N - 1 : 0 : -1])
    x = kernels.fft_pow2(y) / np.sqrt(M)
    return x[:N].real


def binomial_cascade(p: float, length: int) -> np.ndarray:
    """Deterministic multiplicative measure: left children weighted p.

    Cell masses at the deepest level; they sum to 1 and the smallest equals
    min(p, 1-p)^log2(length).
    """
    masses = np.array([1.0])
    levels = int(np.log2(length))
    for _ in range(levels):
        masses = np.concatenate(
            [(masses * p)[:, None], (masses * (1.0 - p))[:, None]], axis=1
        ).ravel()
    return masses


def generate(spec: GeneratorSpec) -> TimeSeries:
    if spec.kind == "white_noise":
        values = white_noise(spec.length, spec.seed)
    elif spec.kind == "brownian":
        values = brownian(spec.length, spec.seed)
    elif spec.kind == "fbm":
        values = fbm_increments(spec.hurst, spec.length, spec.seed)
    else:
        values = binomial_cascade(spec.p, spec.length)
    return TimeSeries(values, label=spec.kind)
