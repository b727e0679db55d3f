"""Deviation diagram of the accumulated series from sliding local line fits.

For each segment size s, every window of s consecutive points gets a
least-squares line; E(j,s) is the root-mean-square absolute deviation of
z_j from the lines of the windows containing j (m_j of them, m_j = s at
interior points), and F(s) averages E(j,s) over all locations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import TimeSeries, profile


@dataclass(frozen=True)
class DeltaLDiagram:
    segment_sizes: np.ndarray  # integers 2..floor(T/4)
    E: np.ndarray  # (locations, sizes), >= 0
    F: np.ndarray  # per-size mean of E over locations

    def __post_init__(self):
        if np.any(self.E < 0) or np.any(self.F < 0):
            raise ValueError("E and F must be nonnegative")


def delta_l(series: TimeSeries, on_profile: bool = True, sizes=None) -> DeltaLDiagram:
    """Build the deviation diagram.

    The method operates on the accumulated profile by default; pass
    ``on_profile=False`` to analyze the raw values. Segment sizes default to
    every integer 2..floor(T/4). A size-s segment around point t starts at
    t - floor(s/2), which centers it at t for odd s and at t - 1 for even s;
    only segments fully inside the series contribute.
    """
    T = len(series)
    if T < 8:
        raise ValueError("series must have at least 8 samples")
    z = profile(series).values if on_profile else series.values
    if sizes is None:
        sizes = np.arange(2, T // 4 + 1, dtype=np.int64)
    else:
        sizes = np.asarray(sizes, dtype=np.int64)
        if np.any(sizes < 2) or np.any(sizes > T):
            raise ValueError("segment sizes must lie in [2, T]")
    E = kernels.deltal_accumulate(np.ascontiguousarray(z, dtype=np.float64), sizes)
    F = E.mean(axis=0)
    return DeltaLDiagram(sizes, E, F)
