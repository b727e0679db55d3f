import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import streamlens as sl


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch every hot kernel once so JIT compilation happens before any
    timed assertion."""
    ts = sl.TimeSeries(np.sin(np.arange(64.0)) + 0.1)
    sl.dft(ts)
    sl.autocovariance(ts, 8)
    sl.cwt(ts, sl.make_wavelet("mexican_hat"), np.geomspace(2, 8, 8))
    sl.gabor(ts, window_width=4.0)
    sl.delta_l(ts, sizes=[2, 3, 4])
    sl.rs_curve(np.arange(64.0) % 7)
    sl.oscillation_structure(np.sin(np.arange(64.0)), levels=[1, 2, 3])
    sl.mfdfa(np.sin(np.arange(512.0)) + np.arange(512.0) % 3, scale_range=[8, 16, 32])
