"""Pure-numpy implementations of the hot kernels.

Every function here has a loop-based twin in ``numba_impl`` computing the
same quantity; the backend is chosen once at import time in ``__init__``.
These versions lean on vectorization and an FFT-based correlation for the
wavelet transform, so they stay usable when numba is unavailable.
"""

from __future__ import annotations

import numpy as np

# wavelet ids shared with the numba backend
GAUSSIAN_WAVE = 0
MEXICAN_HAT = 1
HAAR = 2
MORLET = 3

MORLET_OMEGA0 = 6.0
GAUSS_SUPPORT = 8.0  # kernel truncation radius in units of scale; tails < 1e-13


def _bit_reverse_indices(n):
    idx = np.zeros(n, dtype=np.int64)
    half = 1
    while half < n:
        idx[half : 2 * half] = idx[:half] + n // (2 * half)
        half *= 2
    return idx


def fft_pow2(a, invert=False):
    """Iterative radix-2 transform of a power-of-two complex array, unscaled."""
    x = np.asarray(a, dtype=np.complex128).copy()
    n = x.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    if n == 1:
        return x
    x = x[_bit_reverse_indices(n)]
    sign = 1.0 if invert else -1.0
    size = 2
    while size <= n:
        half = size // 2
        w = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        blocks = x.reshape(-1, size)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * w
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        size *= 2
    return x


def dft_direct(a, invert=False):
    """O(N^2) transform straight from the definition; the non-pow2 fallback."""
    x = np.asarray(a, dtype=np.complex128)
    n = x.shape[0]
    sign = 2j * np.pi / n if invert else -2j * np.pi / n
    k = np.arange(n)
    return np.exp(sign * np.outer(k, k)) @ x


def cross_cov(xc, yc, max_lag):
    """gamma_hat(k) = (1/T) sum_{t=0..T-1-k} xc[t] yc[t+k] for k = 0..max_lag.

    Inputs are already mean-centered.
    """
    T = xc.shape[0]
    out = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        out[k] = np.dot(xc[: T - k], yc[k:]) / T
    return out


def _wavelet_samples(wavelet_id, u):
    if wavelet_id == GAUSSIAN_WAVE:
        return (-u * np.exp(-0.5 * u * u)).astype(np.complex128)
    if wavelet_id == MEXICAN_HAT:
        return ((1.0 - u * u) * np.exp(-0.5 * u * u)).astype(np.complex128)
    if wavelet_id == HAAR:
        out = np.zeros(u.shape, dtype=np.complex128)
        out[(u >= 0.0) & (u < 0.5)] = 1.0
        out[(u >= 0.5) & (u < 1.0)] = -1.0
        return out
    if wavelet_id == MORLET:
        kappa = np.exp(-0.5 * MORLET_OMEGA0 ** 2)
        return (np.pi ** -0.25 * (np.exp(1j * MORLET_OMEGA0 * u) - kappa)
                * np.exp(-0.5 * u * u))
    raise ValueError(f"unknown wavelet id {wavelet_id}")


def kernel_offsets(wavelet_id, s, T):
    """Sample-offset support [lo, hi] of psi((t-l)/s) used by both backends."""
    if wavelet_id == HAAR:
        return 0, min(int(np.ceil(s)) - 1, T - 1)
    M = min(int(np.ceil(GAUSS_SUPPORT * s)), T - 1)
    return -M, M


def cwt_accumulate(x, wavelet_id, scales, h):
    """W(s,l) = (h/sqrt(s)) sum_m x[l+m] psi*(m/s) with zero padding.

    Computed per scale as a linear correlation via the radix-2 transform.
    """
    T = x.shape[0]
    xc = np.asarray(x, dtype=np.complex128)
    out = np.empty((scales.shape[0], T), dtype=np.complex128)
    xfwd_cache = {}
    for si, s in enumerate(scales):
        lo, hi = kernel_offsets(wavelet_id, s, T)
        m = np.arange(lo, hi + 1)
        kc = np.conj(_wavelet_samples(wavelet_id, m / s))
        L = hi - lo + 1
        P = 1
        while P < T + L - 1:
            P *= 2
        if P not in xfwd_cache:
            pad = np.zeros(P, dtype=np.complex128)
            pad[:T] = xc
            xfwd_cache[P] = fft_pow2(pad)
        kpad = np.zeros(P, dtype=np.complex128)
        kpad[:L] = kc[::-1]
        conv = fft_pow2(xfwd_cache[P] * fft_pow2(kpad), invert=True) / P
        out[si] = (h / np.sqrt(s)) * conv[hi : hi + T]
    return out


def gabor_accumulate(x, freqs, locs, width, h):
    """G(nu,l) = h * sum_t x[t] exp(-(t-l)^2/width^2) exp(-i 2 pi nu t)."""
    T = x.shape[0]
    t = np.arange(T)
    window = np.exp(-((t[:, None] - locs[None, :]) / width) ** 2)  # (T, L)
    phase = np.exp(-2j * np.pi * freqs[:, None] * t[None, :])  # (F, T)
    return h * (phase @ (x[:, None] * window))


def deltal_accumulate(z, sizes):
    """E(j,s) for the sliding-fit deviation diagram; E[j, si] over all sizes."""
    T = z.shape[0]
    E = np.empty((T, sizes.shape[0]))
    for si, s in enumerate(sizes):
        nw = T - s + 1
        u = np.arange(s) - (s - 1) / 2.0
        suu = float(u @ u)
        windows = np.lib.stride_tricks.sliding_window_view(z, s)
        a = windows.mean(axis=1)
        b = (windows @ u) / suu
        resid = windows - a[:, None] - b[:, None] * u[None, :]
        r2 = resid * resid
        acc = np.zeros(T)
        m = np.zeros(T)
        for offset in range(s):
            acc[offset : offset + nw] += r2[:, offset]
            m[offset : offset + nw] += 1.0
        E[:, si] = np.sqrt(acc / m)
    return E


def rs_blocks(x, ns):
    """Mean rescaled range over non-overlapping blocks for each window size.

    Returns (rs_means, counts); a window size where every block is constant
    gets count 0 and rs nan.
    """
    T = x.shape[0]
    rs = np.full(ns.shape[0], np.nan)
    counts = np.zeros(ns.shape[0], dtype=np.int64)
    for i, n in enumerate(ns):
        nblocks = T // n
        if nblocks == 0:
            continue
        blocks = x[: nblocks * n].reshape(nblocks, n)
        means = blocks.mean(axis=1)
        dev = blocks - means[:, None]
        S = np.sqrt(np.mean(dev * dev, axis=1))
        y = np.cumsum(dev, axis=1)
        R = y.max(axis=1) - y.min(axis=1)
        ok = S > 0.0
        if ok.any():
            rs[i] = np.mean(R[ok] / S[ok])
            counts[i] = int(ok.sum())
    return rs, counts


def mfdfa_fluct(profile, s, design, pinv):
    """Per-segment detrended variance F^2(nu, s).

    Segments of length s are taken from the start and again from the end
    (2 * floor(T/s) total). ``design`` is the (s, order+1) local polynomial
    design matrix and ``pinv`` its pseudo-inverse, shared across segments.
    """
    T = profile.shape[0]
    m = T // s
    segs = np.concatenate(
        [profile[: m * s].reshape(m, s), profile[T - m * s :].reshape(m, s)]
    )
    coef = segs @ pinv.T
    resid = segs - coef @ design.T
    return np.mean(resid * resid, axis=1)


def dyadic_ranges(x, ncells):
    """max - min over closed dyadic index cells [k*w, (k+1)*w] (last clipped)."""
    T = x.shape[0]
    w = T // ncells
    R = np.empty(ncells)
    for k in range(ncells):
        hi = min((k + 1) * w, T - 1)
        seg = x[k * w : hi + 1]
        R[k] = seg.max() - seg.min()
    return R


def modulus_maxima(v):
    """Interior indices where v >= both neighbors and > at least one of them."""
    left_ge = v[1:-1] >= v[:-2]
    right_ge = v[1:-1] >= v[2:]
    strict = (v[1:-1] > v[:-2]) | (v[1:-1] > v[2:])
    return (np.nonzero(left_ge & right_ge & strict)[0] + 1).astype(np.int64)
