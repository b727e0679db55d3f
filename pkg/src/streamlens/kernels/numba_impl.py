"""Numba-compiled loop implementations of the hot kernels.

Same contracts as ``numpy_impl``; see that module for the definitions.
Kernels are plain sequential loops (no prange reductions), so results do
not depend on thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .numpy_impl import GAUSS_SUPPORT, HAAR, MORLET_OMEGA0, kernel_offsets  # noqa: F401


@njit(cache=True)
def _bit_reverse(x):
    n = x.shape[0]
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            tmp = x[i]
            x[i] = x[j]
            x[j] = tmp
    return x


@njit(cache=True)
def _fft_pow2_jit(x, invert):
    n = x.shape[0]
    _bit_reverse(x)
    sign = 1.0 if invert else -1.0
    size = 2
    while size <= n:
        half = size // 2
        ang = sign * 2.0 * np.pi / size
        wstep = complex(np.cos(ang), np.sin(ang))
        for start in range(0, n, size):
            w = complex(1.0, 0.0)
            for k in range(half):
                even = x[start + k]
                odd = x[start + k + half] * w
                x[start + k] = even + odd
                x[start + k + half] = even - odd
                w *= wstep
        size *= 2
    return x


def fft_pow2(a, invert=False):
    x = np.asarray(a, dtype=np.complex128).copy()
    n = x.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    if n == 1:
        return x
    return _fft_pow2_jit(x, invert)


@njit(cache=True)
def _dft_direct_jit(x, invert):
    n = x.shape[0]
    sign = 2.0 * np.pi / n if invert else -2.0 * np.pi / n
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        acc = complex(0.0, 0.0)
        for t in range(n):
            ang = sign * k * t
            acc += x[t] * complex(np.cos(ang), np.sin(ang))
        out[k] = acc
    return out


def dft_direct(a, invert=False):
    return _dft_direct_jit(np.asarray(a, dtype=np.complex128), invert)


@njit(cache=True)
def cross_cov(xc, yc, max_lag):
    T = xc.shape[0]
    out = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        acc = 0.0
        for t in range(T - k):
            acc += xc[t] * yc[t + k]
        out[k] = acc / T
    return out


@njit(cache=True)
def _psi(wavelet_id, u):
    if wavelet_id == 0:  # gaussian wave
        return complex(-u * np.exp(-0.5 * u * u), 0.0)
    if wavelet_id == 1:  # mexican hat
        return complex((1.0 - u * u) * np.exp(-0.5 * u * u), 0.0)
    if wavelet_id == 2:  # haar
        if 0.0 <= u < 0.5:
            return complex(1.0, 0.0)
        if 0.5 <= u < 1.0:
            return complex(-1.0, 0.0)
        return complex(0.0, 0.0)
    # morlet, with the admissibility correction keeping the mean zero
    g = np.pi ** -0.25 * np.exp(-0.5 * u * u)
    kappa = np.exp(-0.5 * MORLET_OMEGA0 ** 2)
    return complex(g * (np.cos(MORLET_OMEGA0 * u) - kappa),
                   g * np.sin(MORLET_OMEGA0 * u))


@njit(cache=True)
def _cwt_jit(x, wavelet_id, scales, h, los, his):
    T = x.shape[0]
    out = np.empty((scales.shape[0], T), dtype=np.complex128)
    for si in range(scales.shape[0]):
        s = scales[si]
        lo = los[si]
        hi = his[si]
        L = hi - lo + 1
        kc = np.empty(L, dtype=np.complex128)
        for i in range(L):
            kc[i] = np.conj(_psi(wavelet_id, (lo + i) / s))
        amp = h / np.sqrt(s)
        for l in range(T):
            mlo = lo if l + lo >= 0 else -l
            mhi = hi if l + hi <= T - 1 else T - 1 - l
            acc = complex(0.0, 0.0)
            for m in range(mlo, mhi + 1):
                acc += x[l + m] * kc[m - lo]
            out[si, l] = amp * acc
    return out


def cwt_accumulate(x, wavelet_id, scales, h):
    T = x.shape[0]
    los = np.empty(scales.shape[0], dtype=np.int64)
    his = np.empty(scales.shape[0], dtype=np.int64)
    for si, s in enumerate(scales):
        los[si], his[si] = kernel_offsets(wavelet_id, s, T)
    return _cwt_jit(np.asarray(x, dtype=np.float64), wavelet_id, scales, h, los, his)


@njit(cache=True)
def gabor_accumulate(x, freqs, locs, width, h):
    T = x.shape[0]
    # window negligible beyond |t - l| > cut; exp(-38) ~ 3e-17
    cut = int(np.ceil(width * 6.2)) + 1
    out = np.zeros((freqs.shape[0], locs.shape[0]), dtype=np.complex128)
    for fi in range(freqs.shape[0]):
        w = 2.0 * np.pi * freqs[fi]
        for li in range(locs.shape[0]):
            l = locs[li]
            tlo = max(0, int(l) - cut)
            thi = min(T - 1, int(l) + cut)
            acc = complex(0.0, 0.0)
            for t in range(tlo, thi + 1):
                g = np.exp(-((t - l) / width) ** 2)
                ang = -w * t
                acc += x[t] * g * complex(np.cos(ang), np.sin(ang))
            out[fi, li] = h * acc
    return out


@njit(cache=True)
def deltal_accumulate(z, sizes):
    T = z.shape[0]
    E = np.empty((T, sizes.shape[0]))
    acc = np.empty(T)
    cnt = np.empty(T)
    for si in range(sizes.shape[0]):
        s = sizes[si]
        nw = T - s + 1
        half = (s - 1) / 2.0
        suu = 0.0
        for i in range(s):
            d = i - half
            suu += d * d
        for j in range(T):
            acc[j] = 0.0
            cnt[j] = 0.0
        for wstart in range(nw):
            sz = 0.0
            suz = 0.0
            for i in range(s):
                v = z[wstart + i]
                sz += v
                suz += (i - half) * v
            a = sz / s
            b = suz / suu
            for i in range(s):
                r = z[wstart + i] - a - b * (i - half)
                acc[wstart + i] += r * r
                cnt[wstart + i] += 1.0
        for j in range(T):
            E[j, si] = np.sqrt(acc[j] / cnt[j])
    return E


@njit(cache=True)
def rs_blocks(x, ns):
    T = x.shape[0]
    rs = np.full(ns.shape[0], np.nan)
    counts = np.zeros(ns.shape[0], dtype=np.int64)
    for i in range(ns.shape[0]):
        n = ns[i]
        nblocks = T // n
        if nblocks == 0:
            continue
        total = 0.0
        used = 0
        for b in range(nblocks):
            start = b * n
            mean = 0.0
            for t in range(n):
                mean += x[start + t]
            mean /= n
            var = 0.0
            for t in range(n):
                d = x[start + t] - mean
                var += d * d
            S = np.sqrt(var / n)
            if S <= 0.0:
                continue
            cum = 0.0
            lo = np.inf
            hi = -np.inf
            for t in range(n):
                cum += x[start + t] - mean
                if cum < lo:
                    lo = cum
                if cum > hi:
                    hi = cum
            total += (hi - lo) / S
            used += 1
        if used > 0:
            rs[i] = total / used
            counts[i] = used
    return rs, counts


@njit(cache=True)
def mfdfa_fluct(profile, s, design, pinv):
    T = profile.shape[0]
    m = T // s
    order1 = pinv.shape[0]
    out = np.empty(2 * m)
    coef = np.empty(order1)
    for seg in range(2 * m):
        start = seg * s if seg < m else T - (2 * m - seg) * s
        for c in range(order1):
            acc = 0.0
            for t in range(s):
                acc += pinv[c, t] * profile[start + t]
            coef[c] = acc
        var = 0.0
        for t in range(s):
            fit = 0.0
            for c in range(order1):
                fit += design[t, c] * coef[c]
            r = profile[start + t] - fit
            var += r * r
        out[seg] = var / s
    return out


@njit(cache=True)
def dyadic_ranges(x, ncells):
    T = x.shape[0]
    w = T // ncells
    R = np.empty(ncells)
    for k in range(ncells):
        hi = (k + 1) * w
        if hi > T - 1:
            hi = T - 1
        lo = x[k * w]
        hx = x[k * w]
        for t in range(k * w + 1, hi + 1):
            v = x[t]
            if v < lo:
                lo = v
            if v > hx:
                hx = v
        R[k] = hx - lo
    return R


@njit(cache=True)
def modulus_maxima(v):
    n = v.shape[0]
    out = np.empty(n, dtype=np.int64)
    cnt = 0
    for i in range(1, n - 1):
        if v[i] >= v[i - 1] and v[i] >= v[i + 1] and (v[i] > v[i - 1] or v[i] > v[i + 1]):
            out[cnt] = i
            cnt += 1
    return out[:cnt].copy()
