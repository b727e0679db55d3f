import math

import numpy as np
import pytest

import streamlens as sl
from oracles import brute_cross_cov


class TestSampleMoments:
    def test_constant(self):
        assert sl.sample_moments([2.0, 2.0, 2.0]) == (2.0, 0.0)

    def test_two_values(self):
        assert sl.sample_moments([0.0, 1.0]) == (0.5, 0.25)

    def test_uniform_draw_against_fsum(self):
        rng = np.random.default_rng(11)
        x = rng.uniform(0.0, 1.0, size=1000)
        mean, var = sl.sample_moments(x)
        assert abs(mean - 0.5) < 0.05
        assert abs(var - 1.0 / 12.0) < 0.02
        # extended-precision summation oracle
        mean_hp = math.fsum(x) / len(x)
        var_hp = math.fsum((v - mean_hp) ** 2 for v in x) / len(x)
        assert abs(mean - mean_hp) < 1e-12
        assert abs(var - var_hp) < 1e-12


class TestAutocorrelation:
    def test_lag0_is_one(self):
        rng = np.random.default_rng(0)
        cf = sl.autocorrelation(rng.standard_normal(50), 10)
        assert abs(cf.values[0] - 1.0) < 1e-12

    def test_alternating_series(self):
        x = np.array([1.0, -1.0] * 50)
        cf = sl.autocorrelation(x, 1)
        assert abs(cf.values[1] - (-(100 - 1) / 100)) < 1e-12

    def test_constant_raises(self):
        with pytest.raises(ValueError, match="zero variance"):
            sl.autocorrelation(np.ones(32), 4)

    def test_max_lag_bounds(self):
        with pytest.raises(ValueError):
            sl.autocovariance(np.arange(8.0), 8)

    def test_default_max_lag(self):
        cf = sl.autocovariance(np.random.default_rng(1).standard_normal(100))
        assert cf.lags[-1] == 25


class TestCrossCorrelation:
    def test_self_at_zero(self):
        x = np.random.default_rng(2).standard_normal(64)
        cf = sl.cross_correlation(x, x, 0)
        assert abs(cf.values[0] - 1.0) < 1e-12

    def test_shifted_sine_peak_at_shift(self):
        t = np.arange(256)
        d = 7
        x = np.sin(2 * np.pi * t / 32)
        y = np.sin(2 * np.pi * (t - d) / 32)
        cf = sl.cross_correlation(x, y, 16)
        assert cf.lags[np.argmax(cf.values)] == d
        # brute-force oracle on the positive lags
        oracle = brute_cross_cov(list(x), list(y), 16)
        lib = sl.cross_covariance(x, y, 16)
        assert np.max(np.abs(lib.values[16:] - oracle)) < 1e-12

    def test_matches_brute_force_property(self):
        for seed in range(25):
            rng = np.random.default_rng(seed)
            T = int(rng.integers(16, 256))
            L = int(rng.integers(1, T // 2))
            x = rng.standard_normal(T)
            y = rng.standard_normal(T)
            lib = sl.cross_covariance(x, y, L)
            assert np.max(np.abs(lib.values[L:] - brute_cross_cov(list(x), list(y), L))) < 1e-12
            assert np.max(np.abs(lib.values[:L][::-1] - brute_cross_cov(list(y), list(x), L)[1:])) < 1e-12

    def test_symmetry_swap(self):
        rng = np.random.default_rng(5)
        x, y = rng.standard_normal(100), rng.standard_normal(100)
        xy = sl.cross_covariance(x, y, 10)
        yx = sl.cross_covariance(y, x, 10)
        assert np.max(np.abs(xy.values - yx.values[::-1])) < 1e-12

    def test_shift_invariance(self):
        rng = np.random.default_rng(6)
        x, y = rng.standard_normal(128), rng.standard_normal(128)
        base = sl.cross_covariance(x, y, 12).values
        shifted = sl.cross_covariance(x + 100.0, y, 12).values
        assert np.max(np.abs(base - shifted)) < 1e-9 * 100.0

    def test_scale_equivariance(self):
        rng = np.random.default_rng(7)
        x, y = rng.standard_normal(128), rng.standard_normal(128)
        c = 3.5
        cov1 = sl.cross_covariance(x, y, 12).values
        cov2 = sl.cross_covariance(c * x, y, 12).values
        assert np.max(np.abs(c * cov1 - cov2)) < 1e-9
        r1 = sl.cross_correlation(x, y, 12).values
        r2 = sl.cross_correlation(c * x, y, 12).values
        assert np.max(np.abs(r1 - r2)) < 1e-9

    def test_paper_normalization_divides_by_lag0(self):
        rng = np.random.default_rng(8)
        x, y = rng.standard_normal(96), rng.standard_normal(96)
        cov = sl.cross_covariance(x, y, 8)
        paper = sl.cross_correlation(x, y, 8, normalization="paper")
        g0 = cov.values[8]
        assert np.max(np.abs(paper.values - cov.values / g0)) < 1e-12

    def test_standard_normalization_bounded(self):
        rng = np.random.default_rng(9)
        x = rng.standard_normal(200)
        y = 0.5 * x + rng.standard_normal(200)
        cf = sl.cross_correlation(x, y, 50)
        assert np.max(np.abs(cf.values)) <= 1.0 + 1e-9

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            sl.cross_covariance(np.arange(5.0), np.arange(6.0), 2)

    def test_comoving_series_peak_near_zero_lag(self):
        # Fig. 3 analog: strongly co-moving pair peaks at lag 0 with high value
        rng = np.random.default_rng(10)
        base = np.cumsum(rng.standard_normal(300))
        x = base + 0.3 * rng.standard_normal(300)
        y = base + 0.3 * rng.standard_normal(300)
        cf = sl.cross_correlation(x, y, 30)
        peak = cf.lags[np.argmax(cf.values)]
        assert abs(peak) <= 2
        assert cf.values.max() > 0.8
