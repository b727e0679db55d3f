import numpy as np
import pytest

import streamlens as sl


class TestRescaledRange:
    def test_hand_example(self):
        R, S = sl.rescaled_range([1.0, -1.0])
        assert R == 1.0 and S == 1.0

    def test_constant_segment(self):
        with pytest.raises(ValueError, match="zero variance"):
            sl.rescaled_range(np.ones(16))

    def test_white_noise_interval_monte_carlo(self):
        # MC of the exact formulas: R/S for T=1000 lands in [15, 45] with
        # probability >= 0.99; check the rate over many trials
        rng = np.random.default_rng(123)
        inside = 0
        trials = 2000
        for _ in range(trials):
            R, S = sl.rescaled_range(rng.standard_normal(1000))
            inside += 15.0 <= R / S <= 45.0
        assert inside / trials >= 0.985

    def test_affine_invariance(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal(256)
        R1, S1 = sl.rescaled_range(x)
        R2, S2 = sl.rescaled_range(-3.0 * x + 17.0)
        assert abs(R1 / S1 - R2 / S2) < 1e-12


class TestRsCurve:
    def test_minimum_length_curve(self):
        curve = sl.rs_curve(sl.white_noise(64, seed=0))
        assert curve.window_sizes[0] == 8
        assert curve.window_sizes[-1] == 32
        assert np.all(curve.counts > 0)

    def test_ramp_is_persistent(self):
        curve = sl.rs_curve(np.arange(512.0))
        fit = sl.fit_hurst(curve)
        assert 0.85 <= fit.H <= 1.1

    def test_scale_invariance(self):
        x = sl.white_noise(256, seed=1)
        c1 = sl.rs_curve(x)
        c2 = sl.rs_curve(2.0 * x)
        assert np.max(np.abs(c1.rs - c2.rs)) < 1e-12

    def test_too_short(self):
        with pytest.raises(ValueError):
            sl.rs_curve(np.arange(63.0))

    def test_constant_blocks_skipped(self):
        # one block at n=8 is constant; its R/S is skipped, n stays present
        x = sl.white_noise(64, seed=2).copy()
        x[:8] = 5.0
        curve = sl.rs_curve(x, window_sizes=[8, 16, 32])
        n8 = np.where(curve.window_sizes == 8)[0][0]
        assert curve.counts[n8] == 7

    def test_all_blocks_constant_drops_size(self):
        x = np.concatenate([np.zeros(64), np.tile([1.0, -1.0], 32)])
        # at n=64 the first block is constant; construct full-constant case
        y = np.zeros(128)
        y[::2] = 1.0
        y[:64] = 3.0  # first half constant
        curve = sl.rs_curve(y, window_sizes=[64, 32, 16])
        assert 64 in curve.window_sizes  # second block varies, so kept
        z = np.full(128, 2.0)
        z[-1] = 2.5
        curve2 = sl.rs_curve(z, window_sizes=[8, 16, 64])
        assert 8 in curve2.window_sizes and np.all(curve2.counts >= 1)


class TestFitHurst:
    def test_exact_power_law_recovered(self):
        ns = np.unique(np.geomspace(8, 512, 16).round().astype(int))
        for H in (0.3, 0.5, 0.8):
            rs = (ns / 2.0) ** H
            curve = sl.RSCurve(ns, rs, np.ones_like(ns), 1024)
            fit = sl.fit_hurst(curve)
            assert abs(fit.H - H) < 1e-10
            assert fit.r_squared > 1.0 - 1e-12

    def test_white_noise_estimate(self):
        est = [
            sl.fit_hurst(sl.rs_curve(sl.white_noise(4096, seed=s))).H
            for s in range(30)
        ]
        assert abs(float(np.median(est)) - 0.5) < 0.08

    def test_fbm_estimates(self):
        for target in (0.3, 0.7):
            est = [
                sl.fit_hurst(sl.rs_curve(sl.fbm_increments(target, 4096, seed=s))).H
                for s in range(20)
            ]
            assert abs(float(np.median(est)) - target) < 0.1

    def test_short_series_warning(self):
        x = sl.white_noise(128, seed=3)
        fit = sl.fit_hurst(sl.rs_curve(x))
        assert fit.warning is not None and "at least 200" in fit.warning

    def test_too_few_points(self):
        curve = sl.RSCurve(np.array([8, 16, 32]), np.array([3.0, 4.0, 6.0]),
                           np.ones(3, dtype=int), 256)
        with pytest.raises(ValueError):
            sl.fit_hurst(curve)

    def test_fit_range_restriction(self):
        x = sl.white_noise(1024, seed=4)
        curve = sl.rs_curve(x)
        fit = sl.fit_hurst(curve, fit_range=(16, 256))
        assert fit.fit_range[0] >= 16 and fit.fit_range[1] <= 256


class TestRollingHurst:
    def test_last_point_matches_full_fit(self):
        x = sl.white_noise(300, seed=5)
        rolling = sl.rolling_hurst(x)
        full = sl.fit_hurst(sl.rs_curve(x))
        assert rolling.prefix_lengths[-1] == 300
        assert rolling.values[-1] == full.H

    def test_white_noise_stays_in_band(self):
        ok = 0
        for seed in range(20):
            rolling = sl.rolling_hurst(sl.white_noise(1024, seed=seed))
            tail = rolling.values[rolling.prefix_lengths >= 256]
            ok += bool(np.all((tail >= 0.4) & (tail <= 0.65)))
        assert ok >= 19  # 95% of seeds

    def test_variance_jump_break_detected(self):
        T = 1024
        rng = np.random.default_rng(6)
        x = np.concatenate(
            [rng.standard_normal(T // 2), 10.0 * rng.standard_normal(T // 2)]
        )
        rolling = sl.rolling_hurst(x)
        assert rolling.break_time is not None
        assert abs(rolling.break_time - T // 2) <= 0.1 * T

    def test_too_short(self):
        with pytest.raises(ValueError):
            sl.rolling_hurst(np.arange(32.0))


class TestLongMemoryShadow:
    def test_persistent_fgn_positive_autocorrelation(self):
        ok = 0
        for seed in range(20):
            x = sl.fbm_increments(0.8, 2048, seed=seed)
            rho = sl.autocorrelation(x, 20).values
            ok += bool(np.all(rho[1:] > 0))
        assert ok >= 18  # >= 90% of seeds
