"""The Levinson constant, kappa bound, shifted constant, operator
application, and the published-tuple registry."""

import cmath
import math

import numpy as np
import pytest
from scipy import integrate

from critline.errors import ConstraintError, DomainError
from critline.levinson import (
    LevinsonParams,
    ShiftedParams,
    apply_q_operators,
    c_constant_exact,
    c_constant_quadrature,
    discrepancy_note,
    exp_monomial_integral,
    kappa_lower_bound,
    published_tuples,
    shifted_c,
)
from critline.mollifier import Polynomial

BASELINE = LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0, -1.0)), 1.3, 0.5)


def random_params(rng):
    p_deg = int(rng.integers(1, 5))
    q_deg = int(rng.integers(1, 5))
    p = [0.0] + list(rng.uniform(-1, 1, p_deg))
    p[-1] += 1.0 - sum(p)  # P(1)=1
    q = [1.0] + list(rng.uniform(-1, 1, q_deg))
    return LevinsonParams(
        Polynomial(p), Polynomial(q), float(rng.uniform(0.1, 3.0)), float(rng.uniform(0.1, 0.5))
    )


class TestExpMonomialIntegral:
    def test_against_quadrature(self):
        for a in (0.0, 1e-9, 0.3, -0.45, 0.49, 2.6, -5.0, 0.002 + 0.001j):
            for m in (0, 1, 4, 9):
                ref, _ = integrate.quad(
                    lambda v: (cmath.exp(a * v) * v**m).real, 0.0, 1.0, epsabs=1e-14
                )
                if isinstance(a, complex):
                    ref_im, _ = integrate.quad(
                        lambda v: (cmath.exp(a * v) * v**m).imag, 0.0, 1.0, epsabs=1e-14
                    )
                    ref = complex(ref, ref_im)
                assert exp_monomial_integral(a, m) == pytest.approx(ref, abs=1e-13)

    def test_zero_argument_limit(self):
        assert exp_monomial_integral(0.0, 5) == pytest.approx(1.0 / 6.0)

    def test_accuracy_across_branch_switch(self):
        # downward recurrence just below |a| = 1/2, upward just above;
        # both must track quadrature
        for a in (0.4999999, 0.5000001, -0.4999999, -0.5000001):
            for m in (0, 3, 7):
                ref, _ = integrate.quad(
                    lambda v: math.exp(a * v) * v**m, 0.0, 1.0, epsabs=1e-14
                )
                assert exp_monomial_integral(a, m) == pytest.approx(ref, abs=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            exp_monomial_integral(1.0, -1)


class TestConstraints:
    def test_p_at_zero(self):
        with pytest.raises(ConstraintError):
            LevinsonParams(Polynomial((0.5, 0.5)), Polynomial((1.0,)), 1.0, 0.5)

    def test_p_at_one(self):
        with pytest.raises(ConstraintError):
            LevinsonParams(Polynomial((0.0, 0.7)), Polynomial((1.0,)), 1.0, 0.5)

    def test_q_at_zero(self):
        with pytest.raises(ConstraintError):
            LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((0.9, -1.0)), 1.0, 0.5)

    def test_theta_range(self):
        with pytest.raises(ConstraintError):
            LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0,)), 1.0, 0.7)


class TestCConstant:
    def test_trivial_collapse(self):
        params = LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0,)), 0.0, 0.5)
        assert c_constant_exact(params) == pytest.approx(3.0)
        assert c_constant_quadrature(params, 1e-10) == pytest.approx(3.0, abs=1e-9)

    def test_baseline_value_and_kappa_window(self):
        c = c_constant_exact(BASELINE)
        kappa = kappa_lower_bound(c, BASELINE.r_shift)
        assert 0.30 < kappa < 0.36

    def test_cross_path_agreement(self, rng):
        for _ in range(25):
            params = random_params(rng)
            exact = c_constant_exact(params)
            quad = c_constant_quadrature(params, 1e-10)
            assert abs(exact - quad) <= 1e-9 * max(1.0, abs(exact))

    def test_monotone_in_r(self):
        values = []
        for r in np.linspace(0.1, 3.0, 30):
            params = LevinsonParams(Polynomial((0.0, 1.0)), Polynomial((1.0, -1.0)), float(r), 0.5)
            values.append(c_constant_exact(params))
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_tolerance_floor(self):
        with pytest.raises(DomainError):
            c_constant_quadrature(BASELINE, 1e-13)


class TestKappaBound:
    def test_trivial_values(self):
        assert kappa_lower_bound(1.0, 2.0) == 1.0
        assert kappa_lower_bound(math.exp(1.3), 1.3) == pytest.approx(0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            kappa_lower_bound(0.9, 1.0)
        with pytest.raises(DomainError):
            kappa_lower_bound(2.0, 0.0)


class TestShiftedC:
    def test_symmetry(self):
        p = Polynomial((0.0, 1.0))
        a = shifted_c(ShiftedParams(3e-4, -2e-4, 1e4, 1e8), p, 0.5)
        b = shifted_c(ShiftedParams(-2e-4, 3e-4, 1e4, 1e8), p, 0.5)
        assert a == b

    def test_zero_shifts(self):
        # both exponentials drop: 1 + (1/theta) d2/dxdy int P(x+u)P(y+u) du
        p = Polynomial((0.0, 1.0))
        got = shifted_c(ShiftedParams(0.0, 0.0, 1e4, 1e8), p, 0.5)
        # for P = x the mixed derivative of the correlation is int 1 du = 1
        assert got == pytest.approx(1.0 + 2.0)

    def test_against_finite_difference(self):
        p = Polynomial((0.0, 0.4, 0.6))
        theta, m_len, t_scale = 0.5, 1e4, 1e8
        log_m, log_t = math.log(m_len), math.log(t_scale)

        def raw(x, y, a, b):
            val, _ = integrate.quad(lambda u: p(x + u) * p(y + u), 0.0, 1.0, epsabs=1e-13)
            iv, _ = integrate.quad(lambda v: math.exp(-v * (a + b) * log_t), 0.0, 1.0)
            return math.exp(-log_m * (b * x + a * y)) * iv * val

        a, b = 2e-4, 1e-4
        h = 1e-4
        mixed = (
            raw(h, h, a, b) - raw(h, -h, a, b) - raw(-h, h, a, b) + raw(-h, -h, a, b)
        ) / (4 * h * h)
        expected = 1.0 + mixed / theta
        got = shifted_c(ShiftedParams(a, b, m_len, t_scale), p, theta)
        assert complex(got).real == pytest.approx(expected, rel=1e-6)
        assert complex(got).imag == pytest.approx(0.0, abs=1e-12)

    def test_shift_magnitude_guard(self):
        with pytest.raises(DomainError):
            ShiftedParams(1.0, 0.0, 1e4, 1e8)


class TestQOperatorApplication:
    # the exact closed form of the inner derivative squared; the linear
    # expansion and this squared form differ, and operator application
    # reproduces the squared form
    def squared_oracle(self, params):
        p, q, r, theta = params.p_poly, params.q_poly, params.r_shift, params.theta
        h = 1e-3

        def inner(u, v):
            acc = 0.0
            for w, x in zip((1.0, -8.0, 8.0, -1.0), (-2 * h, -h, h, 2 * h)):
                acc += w * math.exp(r * theta * x) * p(x + u) * q(v + theta * x)
            return math.exp(2.0 * r * v) * (acc / (12 * h)) ** 2

        val, _ = integrate.dblquad(inner, 0.0, 1.0, 0.0, 1.0, epsabs=1e-11, epsrel=1e-11)
        return 1.0 + val / params.theta

    def test_matches_squared_functional(self):
        applied = apply_q_operators(BASELINE, 1e8)
        assert complex(applied).imag == pytest.approx(0.0, abs=1e-9)
        assert complex(applied).real == pytest.approx(self.squared_oracle(BASELINE), abs=2e-3)

    def test_t_stability(self):
        # the assembled constant is scale-free, so successive differences
        # along T in {1e6, 1e8, 1e10} sit at rounding level
        vals = [complex(apply_q_operators(BASELINE, t)).real for t in (1e6, 1e8, 1e10)]
        d1 = abs(vals[1] - vals[0])
        d2 = abs(vals[2] - vals[1])
        assert d1 < 1e-9
        assert d2 <= d1 + 1e-10


class TestRegistry:
    def test_three_entries(self):
        tuples = published_tuples()
        assert len(tuples) == 3
        assert tuples[0].name == "baseline"

    def test_constraints_hold(self):
        for t in published_tuples():
            assert t.q_poly(0.0) == pytest.approx(1.0)
            if t.p1_poly is not None:
                assert t.p1_poly(1.0) == pytest.approx(1.0, abs=1e-12)
                assert t.p1_poly(0.0) == 0.0

    def test_r_values_and_flags(self):
        tuples = {t.name: t for t in published_tuples()}
        assert tuples["baseline"].r_shift == 1.3
        assert tuples["baseline"].claimed_c == 2.35
        assert not tuples["baseline"].not_reproducible_here
        assert tuples["two-piece-kappa"].claimed_bound == 0.4172
        assert tuples["two-piece-kappa-star"].r_shift == 1.116
        assert tuples["two-piece-kappa-star"].claimed_bound == 0.4074
        assert tuples["two-piece-kappa"].not_reproducible_here
        assert tuples["two-piece-kappa-star"].not_reproducible_here

    def test_kappa_in_unit_interval_with_levinson_functional(self):
        # two-piece tuples run through the one-polynomial functional with
        # their P1, the piece carrying the P(1)=1 normalization
        for t in published_tuples():
            p = t.p1_poly if t.p1_poly is not None else t.p_poly
            params = LevinsonParams(p, t.q_poly, t.r_shift, 0.5)
            kappa = kappa_lower_bound(c_constant_exact(params), t.r_shift)
            assert 0.0 < kappa < 1.0

    def test_discrepancy_note(self):
        assert discrepancy_note(2.40, 2.35) is None
        note = discrepancy_note(2.50, 2.35)
        assert note is not None and "2.35" in note
