import numpy as np
import pytest

import streamlens as sl


def make_pair(T=256, P=32, shift=0, amp_y=1.0, wavelet="morlet"):
    w = sl.make_wavelet(wavelet)
    t = np.arange(T)
    x = sl.TimeSeries(np.sin(2 * np.pi * t / P))
    y = sl.TimeSeries(amp_y * np.sin(2 * np.pi * (t - shift) / P))
    return sl.cwt(x, w), sl.cwt(y, w)


class TestDiffmod:
    def test_self_is_zero(self):
        wx, _ = make_pair()
        assert np.max(sl.diffmod(wx, wx).values) == 0.0

    def test_against_zero_field(self):
        wx, _ = make_pair()
        zero = sl.cwt(sl.TimeSeries(np.zeros(256)), wx.wavelet, wx.scales)
        d = sl.diffmod(wx, zero)
        assert np.max(np.abs(d.values - np.abs(wx.coefficients))) < 1e-15

    def test_amplitude_doubling_leaves_own_modulus(self):
        # y = 2x, so W_y = 2 W_x exactly and |W_x - W_y| = |W_x|
        wx, wy = make_pair(amp_y=2.0)
        d = sl.diffmod(wx, wy)
        assert np.max(np.abs(d.values - np.abs(wx.coefficients))) < 1e-12

    def test_values_nonnegative_real(self):
        wx, wy = make_pair(shift=3)
        d = sl.diffmod(wx, wy)
        assert d.values.dtype.kind == "f"
        assert np.all(d.values >= 0)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(0)
        w = sl.make_wavelet("mexican_hat")
        scales = np.geomspace(2, 16, 8)
        fx, fy, fz = (
            sl.cwt(sl.TimeSeries(rng.standard_normal(128)), w, scales)
            for _ in range(3)
        )
        dxz = sl.diffmod(fx, fz).values
        dxy = sl.diffmod(fx, fy).values
        dyz = sl.diffmod(fy, fz).values
        assert np.all(dxz <= dxy + dyz + 1e-12)

    def test_grid_mismatch(self):
        wx, _ = make_pair()
        other = sl.cwt(sl.TimeSeries(np.ones(128)), wx.wavelet,
                       np.geomspace(2, 16, 8))
        with pytest.raises(ValueError, match="grid mismatch"):
            sl.diffmod(wx, other)

    def test_wavelet_mismatch(self):
        wx, _ = make_pair()
        other = sl.cwt(sl.TimeSeries(np.ones(256)), sl.make_wavelet("haar"),
                       wx.scales)
        with pytest.raises(ValueError, match="wavelet mismatch"):
            sl.diffmod(wx, other)


class TestPhaseDiff:
    def test_self_is_zero(self):
        wx, _ = make_pair()
        assert np.max(np.abs(sl.phase_diff(wx, wx).values)) == 0.0

    def test_quarter_period_shift(self):
        T, P = 512, 64
        wx, wy = make_pair(T=T, P=P, shift=P // 4)
        pd = sl.phase_diff(wx, wy)
        mod = np.where(wx.trusted(), np.abs(wx.coefficients), 0.0)
        interior = slice(T // 4, 3 * T // 4)
        ridge = int(np.argmax(mod[:, interior].sum(axis=1)))
        vals = pd.values[ridge, interior]
        assert np.max(np.abs(np.abs(vals) - np.pi / 2)) < 0.1

    def test_real_wavelet_rejected(self):
        wx, wy = make_pair(wavelet="mexican_hat")
        with pytest.raises(ValueError, match="phase requires complex wavelet"):
            sl.phase_diff(wx, wy)

    def test_range_principal_interval(self):
        wx, wy = make_pair(shift=11)
        vals = sl.phase_diff(wx, wy).values
        assert np.all(vals > -np.pi) and np.all(vals <= np.pi)


class TestCrwt:
    def test_self_reduces_to_scalogram(self):
        wx, _ = make_pair()
        c = sl.crwt(wx, wx)
        assert np.max(np.abs(c.values - sl.scalogram(wx))) < 1e-12
        assert np.max(np.abs(np.angle(c.values))) < 1e-12

    def test_zero_field(self):
        wx, _ = make_pair()
        zero = sl.cwt(sl.TimeSeries(np.zeros(256)), wx.wavelet, wx.scales)
        assert np.max(np.abs(sl.crwt(wx, zero).values)) == 0.0

    def test_polar_factorization(self):
        wx, wy = make_pair(shift=5)
        c = sl.crwt(wx, wy)
        prod = np.abs(wx.coefficients) * np.abs(wy.coefficients)
        assert np.max(np.abs(np.abs(c.values) - prod)) < 1e-12

    def test_hermitian_swap(self):
        wx, wy = make_pair(shift=7)
        cxy = sl.crwt(wx, wy).values
        cyx = sl.crwt(wy, wx).values
        assert np.max(np.abs(cxy - np.conj(cyx))) < 1e-12

    def test_argument_is_negative_phase_diff(self):
        wx, wy = make_pair(shift=9)
        c = sl.crwt(wx, wy)
        pd = sl.phase_diff(wx, wy)
        # compare as complex phases to avoid wrap seams
        lhs = np.exp(1j * np.angle(c.values))
        rhs = np.exp(-1j * pd.values)
        mod = np.abs(c.values)
        keep = mod > 1e-6 * mod.max()
        assert np.max(np.abs(lhs[keep] - rhs[keep])) < 1e-9
