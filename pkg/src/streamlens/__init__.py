"""Nonlinear time-series analysis for information streams.

Correlation and spectral estimators, continuous and cross-wavelet
transforms, the deviation diagram of accumulated series, R/S Hurst
estimation, and multifractal spectra via oscillation partition functions,
MF-DFA, and WTMM. Hot kernels run through numba when available; set
STREAMLENS_NUMBA=0 for the pure-numpy path.
"""

from .core import (
    EventStream,
    TimeSeries,
    bin_events,
    profile,
    read_csv,
    series_from_json,
    series_to_json,
    write_csv,
)
from .cwt import Wavelet, WaveletField, cwt, default_scales, make_wavelet, scalogram
from .deltal import DeltaLDiagram, delta_l
from .errors import DataError, StreamlensError
from .hurst import (
    HurstFit,
    RollingHurst,
    RSCurve,
    fit_hurst,
    rescaled_range,
    rolling_hurst,
    rs_curve,
)
from .kernels import BACKEND as accel_backend
from .multifractal import (
    HolderEstimate,
    MaximaLine,
    MultifractalSpectrum,
    ScalingFit,
    Skeleton,
    build_skeleton,
    default_q_grid,
    find_modulus_maxima,
    holder_at_point,
    legendre_spectrum,
    mfdfa,
    oscillation_structure,
    wtmm_partition,
    wtmm_spectrum,
)
from .spectral import (
    GaborField,
    Spectrum,
    dft,
    fourier_coefficients,
    gabor,
    inverse_coefficients,
    inverse_dft,
)
from .stats import (
    CorrelationFunction,
    autocorrelation,
    autocovariance,
    cross_correlation,
    cross_covariance,
    sample_moments,
)
from .synth import (
    GeneratorSpec,
    binomial_cascade,
    brownian,
    fbm_increments,
    generate,
    white_noise,
)
from .xwt import CrossField, crwt, diffmod, phase_diff

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CorrelationFunction",
    "CrossField",
    "DataError",
    "DeltaLDiagram",
    "EventStream",
    "GaborField",
    "GeneratorSpec",
    "HolderEstimate",
    "HurstFit",
    "MaximaLine",
    "MultifractalSpectrum",
    "RSCurve",
    "RollingHurst",
    "ScalingFit",
    "Skeleton",
    "Spectrum",
    "StreamlensError",
    "TimeSeries",
    "Wavelet",
    "WaveletField",
    "accel_backend",
    "autocorrelation",
    "autocovariance",
    "bin_events",
    "binomial_cascade",
    "brownian",
    "build_skeleton",
    "crwt",
    "cross_correlation",
    "cross_covariance",
    "cwt",
    "default_q_grid",
    "default_scales",
    "delta_l",
    "dft",
    "diffmod",
    "fbm_increments",
    "find_modulus_maxima",
    "fit_hurst",
    "fourier_coefficients",
    "gabor",
    "generate",
    "holder_at_point",
    "inverse_coefficients",
    "inverse_dft",
    "legendre_spectrum",
    "make_wavelet",
    "mfdfa",
    "oscillation_structure",
    "phase_diff",
    "profile",
    "read_csv",
    "rescaled_range",
    "rolling_hurst",
    "rs_curve",
    "sample_moments",
    "scalogram",
    "series_from_json",
    "series_to_json",
    "white_noise",
    "write_csv",
    "wtmm_partition",
    "wtmm_spectrum",
]
