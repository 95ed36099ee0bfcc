"""Smooth plateau weight and the desk-scale mollified moment."""

import math

import numpy as np
import pytest

from critline.errors import DomainError
from critline.levinson import LevinsonParams
from critline.moment import (
    SmoothWeight,
    mollified_moment_numeric,
    smooth_weight,
    w_hat_zero,
)
from critline.mollifier import Polynomial

BASELINE = LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0, -1.0)), 1.3, 0.5)

# finite-difference bounds max |w^(j)| Delta^j measured for this ramp;
# they are stable under refinement but much larger than (2j)!
DERIVATIVE_BOUNDS = {1: 20.0, 2: 2000.0, 3: 1e5, 4: 2e7}


class TestSmoothWeight:
    def test_defaults(self):
        w = SmoothWeight(5000.0)
        assert w.delta == pytest.approx(5000.0 / math.log(5000.0))
        assert w.plateau == (2500.0, 5000.0)
        lo, hi = w.support
        assert lo >= 5000.0 / 4.0 and hi <= 10000.0

    def test_validation(self):
        with pytest.raises(DomainError):
            SmoothWeight(5000.0, delta=-1.0)
        with pytest.raises(DomainError):
            SmoothWeight(5000.0, plateau=(3000.0, 2000.0))
        with pytest.raises(DomainError):
            SmoothWeight(5000.0, plateau=(1000.0, 5000.0))  # pokes below T/4

    def test_range_and_plateau(self, rng):
        w = SmoothWeight(5000.0)
        t = rng.uniform(0.0, 10000.0, 500)
        vals = smooth_weight(t, w)
        assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
        assert smooth_weight(3000.0, w) == 1.0
        assert smooth_weight(1000.0, w) == 0.0
        assert smooth_weight(9000.0, w) == 0.0

    def test_ramp_midpoint(self):
        w = SmoothWeight(5000.0)
        mid_left = w.plateau[0] - w.delta / 2.0
        mid_right = w.plateau[1] + w.delta / 2.0
        assert smooth_weight(mid_left, w) == pytest.approx(0.5, abs=1e-12)
        assert smooth_weight(mid_right, w) == pytest.approx(0.5, abs=1e-12)

    def test_ramp_complement_symmetry(self, rng):
        w = SmoothWeight(5000.0)
        lo = w.plateau[0] - w.delta
        for x in rng.uniform(0.0, w.delta, 50):
            total = smooth_weight(lo + x, w) + smooth_weight(lo + w.delta - x, w)
            assert total == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    def test_derivative_bounds(self, order, rng):
        from critline.levinson import _fornberg_weights

        w = SmoothWeight(5000.0)
        d = w.delta
        h = d / 50.0
        grid = h * np.arange(-4, 5)
        weights = _fornberg_weights(grid, order)
        worst = 0.0
        for t in rng.uniform(*w.support, 100):
            est = abs(sum(weights[k] * smooth_weight(t + grid[k], w) for k in range(9)))
            worst = max(worst, est * d**order)
        assert worst < DERIVATIVE_BOUNDS[order]


class TestWHatZero:
    def test_between_indicator_bounds(self):
        w = SmoothWeight(5000.0)
        plateau_len = w.plateau[1] - w.plateau[0]
        val = w_hat_zero(w)
        assert plateau_len <= val <= plateau_len + 2.0 * w.delta

    def test_equals_plateau_plus_delta(self):
        # the symmetric ramp contributes exactly delta/2 on each side
        w = SmoothWeight(5000.0)
        assert w_hat_zero(w) == pytest.approx(
            (w.plateau[1] - w.plateau[0]) + w.delta, rel=1e-8
        )

    def test_narrow_ramp_limit(self):
        w = SmoothWeight(5000.0, delta=1.0)
        assert w_hat_zero(w) == pytest.approx(2501.0, rel=1e-6)

    def test_default_within_expected_window(self):
        w = SmoothWeight(5000.0)
        val = w_hat_zero(w)
        assert abs(val - 2500.0) <= 5000.0 / math.log(5000.0) + 1e-6


class TestMoment:
    def test_small_t_run_positive(self):
        report = mollified_moment_numeric(BASELINE, 600.0)
        assert report.numeric_moment > 0.0
        assert report.main_term > 0.0
        assert report.ratio == pytest.approx(report.numeric_moment / report.main_term)
        assert not report.refinement_warning

    def test_runtime_guard(self):
        with pytest.raises(DomainError):
            mollified_moment_numeric(BASELINE, 1e5)

    def test_coarse_grid_warning(self):
        report = mollified_moment_numeric(BASELINE, 600.0, grid_step=20.0)
        assert report.refinement_warning

    def test_grid_offset_stability(self):
        a = mollified_moment_numeric(BASELINE, 600.0, grid_step=0.05)
        b = mollified_moment_numeric(BASELINE, 600.0, grid_step=0.049)
        assert a.numeric_moment == pytest.approx(b.numeric_moment, rel=2e-3)

    def test_degenerate_mollifier(self):
        # theta tiny: M < 2, psi collapses to 1 and the moment is the
        # smoothed second moment of V alone
        params = LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0, -1.0)), 1.3, 0.05)
        report = mollified_moment_numeric(params, 600.0)
        assert report.ratio > 0.0 and math.isfinite(report.ratio)
