import math

import numpy as np
import pytest

from ldashift import (
    Behavior,
    CurveTooShort,
    InvalidGamma,
    OnKnot,
    Phase,
    behavior_signature,
    classify_phase,
    derivative_at_balance,
    imbalance_curve,
    phase_knots,
    regularized_monotonicity_check,
    sign_pattern,
)

RATIO_GRID = np.arange(1.0, 10.0 + 1e-12, 0.25)


class TestPhaseKnots:
    def test_snr_nine(self):
        knots = phase_knots(9.0)
        assert knots.gamma_a == 2.0
        assert knots.gamma_b == pytest.approx((3 + math.sqrt(585)) / 8, abs=1e-12)
        assert knots.gamma_b == pytest.approx(3.398347, abs=1e-6)

    def test_zero_snr(self):
        assert phase_knots(0.0).gamma_b == pytest.approx(3.0, abs=1e-12)

    def test_large_snr_limit(self):
        assert phase_knots(1e6).gamma_b == pytest.approx(4.0, abs=1e-2)
        assert phase_knots(1e6).gamma_b < 4.0

    @pytest.mark.parametrize("delta2", [0.0, 0.5, 1.0, 4.0, 9.0, 100.0, 1e4])
    def test_gamma_b_above_gamma_a(self, delta2):
        knots = phase_knots(delta2)
        assert knots.gamma_b > knots.gamma_a


class TestDerivativeAtBalance:
    @pytest.mark.parametrize(
        "gamma0,sign", [(0.5, 1), (1.0, 1), (2.5, -1), (3.0, -1), (4.0, 1), (5.0, 1), (6.0, 1)]
    )
    def test_sign_pattern_across_knots(self, gamma0, sign):
        assert math.copysign(1, derivative_at_balance(gamma0, 9.0)) == sign

    def test_gamma0_two_rejected_without_ridge(self):
        with pytest.raises(InvalidGamma):
            derivative_at_balance(2.0, 9.0)

    def test_gamma0_two_fine_with_ridge(self):
        assert derivative_at_balance(2.0, 9.0, lam=1.0) > 0

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("gamma0", [0.5, 2.5, 5.0])
    def test_strong_ridge_always_positive(self, gamma0, lam):
        assert derivative_at_balance(gamma0, 9.0, lam=lam) > 0

    def test_knot_consistency(self):
        # sign flips exactly at gamma0 = 2 and gamma0 = gamma_b, nowhere else
        gamma_b = phase_knots(9.0).gamma_b
        grid = [g for g in np.arange(0.25, 6.001, 0.05)
                if abs(g - 2.0) > 0.05 and abs(g - gamma_b) > 0.05]
        signs = [math.copysign(1, derivative_at_balance(g, 9.0)) for g in grid]
        flips = [grid[i] for i in range(1, len(grid)) if signs[i] != signs[i - 1]]
        assert len(flips) == 2
        assert abs(flips[0] - 2.0) <= 0.11
        assert abs(flips[1] - gamma_b) <= 0.11


class TestImbalanceCurve:
    def test_balanced_endpoint_value(self):
        curve = imbalance_curve(5.0, 9.0, RATIO_GRID)
        assert curve.ratios[0] == 1.0
        assert curve.risks[0] == pytest.approx(0.3065139, abs=1e-6)

    def test_descends_by_ratio_eight(self):
        curve = imbalance_curve(5.0, 9.0, RATIO_GRID)
        r8 = curve.risks[list(curve.ratios).index(8.0)]
        assert r8 == pytest.approx(0.2483262, abs=1e-6)
        assert r8 < curve.risks[0]

    def test_interpolation_points_skipped(self):
        curve = imbalance_curve(5.0, 9.0, RATIO_GRID)
        assert curve.skipped_ratios == (4.0,)  # gamma0/(1+r) = 1 there
        assert 4.0 not in curve.ratios

    def test_ridge_keeps_all_points(self):
        curve = imbalance_curve(5.0, 9.0, RATIO_GRID, lam=1.0)
        assert curve.skipped_ratios == ()
        assert curve.ratios.size == RATIO_GRID.size

    def test_zero_snr_flat_half(self):
        curve = imbalance_curve(0.5, 0.0, RATIO_GRID)
        assert curve.risks[0] == pytest.approx(0.5)
        assert np.all(np.isfinite(curve.risks))

    def test_rejects_bad_grids(self):
        with pytest.raises(ValueError):
            imbalance_curve(0.5, 9.0, [0.5, 1.0, 2.0])
        with pytest.raises(ValueError):
            imbalance_curve(0.5, 9.0, [1.0, 1.0, 2.0])


class TestBehaviorSignature:
    @pytest.mark.parametrize(
        "gamma0,expected",
        [(0.5, Behavior.I), (2.5, Behavior.II), (5.0, Behavior.III)],
    )
    def test_three_behaviors(self, gamma0, expected):
        curve = imbalance_curve(gamma0, 9.0, RATIO_GRID)
        assert behavior_signature(curve) is expected

    def test_short_curve_rejected(self):
        curve = imbalance_curve(0.5, 9.0, np.arange(1.0, 2.5, 0.25))
        with pytest.raises(CurveTooShort):
            behavior_signature(curve)

    def test_deadband_collapses_noise(self):
        values = [0.3, 0.2, 0.2 + 1e-12, 0.25]
        assert sign_pattern(values, epsilon=1e-9) == (-1, 1)

    def test_small_trailing_rise_ignored(self):
        # the shallow late drift toward 0.5 must not break the (+,-) shape
        curve = imbalance_curve(2.5, 9.0, RATIO_GRID)
        assert sign_pattern(curve.risks, 1e-9) == (1, -1, 1)
        assert behavior_signature(curve) is Behavior.II

    def test_monotone_maps_to_other(self):
        curve = imbalance_curve(0.5, 9.0, RATIO_GRID, lam=1.0)
        pattern = sign_pattern(curve.risks, 1e-9)
        assert pattern not in {(1, -1), (-1, 1, -1)}


class TestClassifyPhase:
    @pytest.mark.parametrize(
        "gamma0,expected",
        [(0.5, Phase.I), (2.5, Phase.II), (5.0, Phase.III_CANDIDATE)],
    )
    def test_examples(self, gamma0, expected):
        assert classify_phase(gamma0, 9.0) is expected

    def test_knot_boundary_rejected(self):
        with pytest.raises(OnKnot):
            classify_phase(2.0, 9.0)
        with pytest.raises(OnKnot):
            classify_phase(phase_knots(9.0).gamma_b, 9.0)

    @pytest.mark.parametrize("gamma0", [0.25, 0.5, 1.0, 2.5, 3.0, 5.0, 6.0])
    def test_agrees_with_curve_shape(self, gamma0):
        phase = classify_phase(gamma0, 9.0)
        behavior = behavior_signature(imbalance_curve(gamma0, 9.0, RATIO_GRID))
        expected = {
            Phase.I: Behavior.I,
            Phase.II: Behavior.II,
            Phase.III_CANDIDATE: Behavior.III,
        }[phase]
        assert behavior is expected


class TestEndpointLimit:
    def test_half_within_two_percent_at_1e4(self):
        curve = imbalance_curve(5.0, 9.0, [1.0, 1e4])
        assert abs(curve.risks[-1] - 0.5) <= 0.02

    @pytest.mark.xfail(
        strict=True,
        reason="the drift toward 0.5 is logarithmic in the ratio and slowest "
        "at small gamma0; at ratio 1e4 the gamma0=0.5 endpoint is 0.4731, "
        "just outside the 0.02 band",
    )
    def test_half_within_two_percent_at_1e4_small_gamma0(self):
        curve = imbalance_curve(0.5, 9.0, [1.0, 1e4])
        assert abs(curve.risks[-1] - 0.5) <= 0.02

    def test_approaches_half_eventually(self):
        devs = [
            abs(imbalance_curve(0.5, 9.0, [1.0, r]).risks[-1] - 0.5)
            for r in (1e4, 1e6, 1e8)
        ]
        assert devs == sorted(devs, reverse=True)
        assert devs[-1] < 1e-4


class TestRegularizedMonotonicity:
    GRID = np.arange(0.05, 5.0 + 1e-12, 0.05)

    def test_strong_ridge_monotone(self):
        ok, violation = regularized_monotonicity_check(9.0, 1.0, self.GRID)
        assert ok and violation is None

    def test_weak_ridge_peaks_near_one(self):
        ok, violation = regularized_monotonicity_check(9.0, 1e-4, self.GRID)
        assert not ok
        assert 0.9 <= violation <= 1.2

    def test_zero_snr_trivially_monotone(self):
        ok, _ = regularized_monotonicity_check(0.0, 0.3, self.GRID)
        assert ok
