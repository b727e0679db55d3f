"""Hot-kernel backend selection.

The numba backend is used when numba imports cleanly; set STREAMLENS_NUMBA=0
(or "off"/"false") to force the pure-numpy path, STREAMLENS_NUMBA=1 to make a
missing numba an error. STREAMLENS_THREADS caps numba threading (0 = auto);
kernels are sequential, so results are identical either way.
"""

from __future__ import annotations

import os
import warnings

from . import numpy_impl

_flag = os.environ.get("STREAMLENS_NUMBA", "auto").strip().lower()
_want_numba = _flag not in ("0", "off", "false", "no")

BACKEND = "numpy"
_impl = numpy_impl
if _want_numba:
    try:
        from . import numba_impl as _numba_impl

        _impl = _numba_impl
        BACKEND = "numba"
    except ImportError as exc:
        if _flag in ("1", "on", "true", "yes"):
            raise ImportError(
                "STREAMLENS_NUMBA requested the numba backend but numba is unavailable"
            ) from exc
        warnings.warn(f"numba unavailable ({exc}); falling back to numpy kernels")


def set_threads(n):
    """Cap kernel parallelism; 0 or None means automatic."""
    if BACKEND != "numba" or not n:
        return
    import numba

    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


_threads = os.environ.get("STREAMLENS_THREADS")
if _threads is not None:
    try:
        set_threads(int(_threads))
    except ValueError:
        warnings.warn(f"ignoring non-integer STREAMLENS_THREADS={_threads!r}")

GAUSSIAN_WAVE = numpy_impl.GAUSSIAN_WAVE
MEXICAN_HAT = numpy_impl.MEXICAN_HAT
HAAR = numpy_impl.HAAR
MORLET = numpy_impl.MORLET
MORLET_OMEGA0 = numpy_impl.MORLET_OMEGA0
GAUSS_SUPPORT = numpy_impl.GAUSS_SUPPORT
kernel_offsets = numpy_impl.kernel_offsets

fft_pow2 = _impl.fft_pow2
dft_direct = _impl.dft_direct
cross_cov = _impl.cross_cov
cwt_accumulate = _impl.cwt_accumulate
gabor_accumulate = _impl.gabor_accumulate
deltal_accumulate = _impl.deltal_accumulate
rs_blocks = _impl.rs_blocks
mfdfa_fluct = _impl.mfdfa_fluct
dyadic_ranges = _impl.dyadic_ranges
modulus_maxima = _impl.modulus_maxima
