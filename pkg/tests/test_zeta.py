"""Zeta engine, xi, Hardy Z, zero scanning, and the shifted approximate
functional equation, checked against mpmath and internal identities."""

import math

import mpmath as mp
import numpy as np
import pytest

from critline.errors import ConditioningError, DomainError, PoleError
from critline.zeta import (
    AfeParams,
    afe_pair,
    afe_v_weight,
    afe_x_factor,
    count_critical_zeros,
    hardy_z,
    hardy_z_line,
    xi_completed,
    zero_count_estimate,
    zeta,
    zeta_derivative,
    zeta_line,
)

mp.mp.dps = 30


class TestZeta:
    def test_against_mpmath(self, rng):
        for _ in range(30):
            s = complex(rng.uniform(-10, 10), rng.uniform(-40, 40))
            if abs(s - 1.0) < 0.05:
                continue
            ref = complex(mp.zeta(mp.mpc(s)))
            assert zeta(s) == pytest.approx(ref, rel=1e-10, abs=1e-12)

    def test_known_values(self):
        assert zeta(2.0) == pytest.approx(math.pi**2 / 6, rel=1e-14)
        assert zeta(0.0) == pytest.approx(-0.5, rel=1e-13)

    def test_trivial_zeros_exact(self):
        assert zeta(-2.0) == 0.0
        assert zeta(-10.0) == 0.0

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta(1.0)

    def test_high_line(self):
        s = 0.5 + 5000.0j
        ref = complex(mp.zeta(mp.mpc(s)))
        assert zeta(s) == pytest.approx(ref, rel=1e-9)


class TestZetaLine:
    def test_jets_match_mpmath_derivatives(self):
        t = np.array([35.0, 210.5, 1234.0])
        jets = zeta_line(0.5, t, order=3)
        for i, tv in enumerate(t):
            for j in range(4):
                ref = complex(mp.zeta(mp.mpc(0.5, tv), derivative=j)) / math.factorial(j)
                assert complex(jets[j, i]) == pytest.approx(ref, abs=1e-9)

    def test_off_half_line(self):
        sigma = 0.35
        t = np.array([60.0])
        ref = complex(mp.zeta(mp.mpc(sigma, 60.0)))
        assert complex(zeta_line(sigma, t, 0)[0, 0]) == pytest.approx(ref, rel=1e-11)


class TestZetaDerivative:
    def test_against_mpmath(self):
        for order in (1, 2, 4):
            ref = complex(mp.zeta(mp.mpc(2, 3), derivative=order))
            assert zeta_derivative(2 + 3j, order) == pytest.approx(ref, rel=1e-9)

    def test_order_zero_identity(self):
        s = 0.4 + 7.0j
        assert zeta_derivative(s, 0) == zeta(s)

    def test_near_pole_refused(self):
        with pytest.raises(ConditioningError):
            zeta_derivative(1.0005, 1)

    def test_order_cap(self):
        with pytest.raises(DomainError):
            zeta_derivative(2.0, 9)


class TestXi:
    def test_symmetry_and_path_agreement(self, rng):
        for _ in range(25):
            s = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            direct = xi_completed(s, "direct")
            assert xi_completed(1.0 - s, "direct") == pytest.approx(direct, abs=1e-10)
            assert xi_completed(s, "continued") == pytest.approx(direct, abs=1e-10)

    def test_special_points(self):
        assert xi_completed(0.0) == pytest.approx(0.5)
        assert xi_completed(1.0, "continued") == pytest.approx(0.5, abs=1e-12)

    def test_bad_path(self):
        with pytest.raises(DomainError):
            xi_completed(2.0, "nope")


class TestHardyZ:
    def test_real_and_modulus(self):
        for t in (5.0, 18.0, 77.3):
            z = hardy_z(t)
            assert isinstance(z, float)
            assert abs(z) == pytest.approx(abs(zeta(0.5 + 1j * t)), rel=1e-10)

    def test_line_matches_scalar(self):
        t = np.array([10.0, 20.0, 30.0])
        line = hardy_z_line(t)
        for i, tv in enumerate(t):
            assert line[i] == pytest.approx(hardy_z(float(tv)), rel=1e-10)

    def test_height_cap(self):
        with pytest.raises(DomainError):
            hardy_z(2e5)


class TestZeroScan:
    def test_first_zeros(self):
        report = count_critical_zeros(0.0, 30.0, 0.05)
        assert report.zero_count == 3
        known_first = 14.134725
        assert report.zeros[0] == pytest.approx(known_first, abs=1e-4)
        for z in report.zeros:
            assert abs(hardy_z(z)) < 1e-4

    def test_empty_range(self):
        report = count_critical_zeros(5.0, 5.0, 0.1)
        assert report.zero_count == 0

    def test_step_warning(self):
        report = count_critical_zeros(0.0, 10.0, 0.75)
        assert report.step_warning

    def test_validation(self):
        with pytest.raises(DomainError):
            count_critical_zeros(-1.0, 5.0, 0.1)
        with pytest.raises(DomainError):
            count_critical_zeros(0.0, 5.0, 0.0)

    def test_estimate(self):
        # (T/2pi)log(T/2pi) - T/2pi at T=100
        u = 100.0 / (2 * math.pi)
        assert zero_count_estimate(100.0) == pytest.approx(u * math.log(u) - u)


class TestAfe:
    def test_param_validation(self):
        with pytest.raises(DomainError):
            AfeParams(0.6, 0.0, 50.0)
        with pytest.raises(DomainError):
            AfeParams(0.1, 0.1, 5.0)

    def test_degenerate_shift_sum(self):
        p = AfeParams(1e-3, -1e-3, 50.0)
        with pytest.raises(DomainError):
            afe_pair(p)

    def test_x_factor_against_mpmath(self):
        a, b, t = 0.1, 0.2, 30.0
        p = AfeParams(a, b, t)
        ref = mp.power(mp.pi, a + b) * (
            mp.gamma((0.5 - a - 1j * t) / 2)
            * mp.gamma((0.5 - b + 1j * t) / 2)
            / mp.gamma((0.5 + a + 1j * t) / 2)
            / mp.gamma((0.5 + b - 1j * t) / 2)
        )
        assert afe_x_factor(p) == pytest.approx(complex(ref), rel=1e-12)

    def test_v_weight_normalization_and_decay(self):
        p = AfeParams(1e-3, 1e-3, 50.0)
        near_one = afe_v_weight(1.0, p)
        assert abs(near_one - 1.0) < 0.1
        far = abs(afe_v_weight(4000.0, p))
        assert far < 1e-4

    def test_assembly_matches_direct_product(self):
        a, b, t = 0.1, 0.2, 30.0
        params = AfeParams(a, b, t, truncation_length=1500)
        direct = zeta(0.5 + a + 1j * t) * zeta(0.5 + b - 1j * t)
        assembled = afe_pair(params)
        assert abs(assembled - direct) / abs(direct) < 1e-3

    def test_truncation_refines(self):
        a, b, t = 1e-3, 1e-3, 50.0
        direct = zeta(0.5 + a + 1j * t) * zeta(0.5 + b - 1j * t)
        coarse = afe_pair(AfeParams(a, b, t, truncation_length=500))
        fine = afe_pair(AfeParams(a, b, t, truncation_length=2000))
        assert abs(fine - direct) < abs(coarse - direct)
