"""Elliptic integral layer: oracles first, then the lifted functions."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from harmonictori.elliptic import (
    ChartBoundary, EllipticModulus, LiftedAngle, complementary_modulus,
    complete_E, complete_K, incomplete_E_reg_imag, incomplete_F_imag,
    legendre_defect, lifted_E, lifted_F, w_imag, wind,
)


def test_elliptic_modulus_type():
    m = EllipticModulus(0.6)
    assert m.complement == pytest.approx(0.8)
    assert complete_K(m) == complete_K(0.6)
    assert w_imag(1.0, m) == w_imag(1.0, 0.6)
    with pytest.raises(ValueError):
        EllipticModulus(1.0)

# independent quadrature oracles on the defining integrals


def K_oracle(k):
    val, _ = quad(lambda t: 1.0 / math.sqrt(1 - k * k * math.sin(t) ** 2),
                  0, math.pi / 2, epsabs=1e-14, epsrel=1e-14)
    return val


def E_oracle(k):
    val, _ = quad(lambda t: math.sqrt(1 - k * k * math.sin(t) ** 2),
                  0, math.pi / 2, epsabs=1e-14, epsrel=1e-14)
    return val


def Fi_oracle(x, k):
    val, _ = quad(lambda t: 1.0 / math.sqrt((1 + t * t) * (1 + k * k * t * t)),
                  0, x, epsabs=1e-14, epsrel=1e-14)
    return val


def Ei_oracle(x, k):
    def f(t):
        a = math.sqrt(1 + t * t)
        return (1 - k * k) / (a * (math.sqrt(1 + k * k * t * t) + k * a))
    val, _ = quad(f, 0, x, epsabs=1e-14, epsrel=1e-14)
    return val


class TestComplete:
    def test_small_k_limit(self):
        assert complete_K(1e-12) == pytest.approx(math.pi / 2, abs=1e-10)
        assert complete_E(1e-12) == pytest.approx(math.pi / 2, abs=1e-10)

    def test_frozen_values(self):
        # oracle values computed from the defining integrals at 1e-14
        assert complete_K(0.5) == pytest.approx(1.6857503548125963, abs=1e-13)
        assert complete_E(0.5) == pytest.approx(1.4674622093394272, abs=1e-13)

    @pytest.mark.parametrize("k", [0.1, 0.33, 0.5, 0.77, 0.9, 0.99])
    def test_against_oracle(self, k):
        assert complete_K(k) == pytest.approx(K_oracle(k), abs=1e-13)
        assert complete_E(k) == pytest.approx(E_oracle(k), abs=1e-13)

    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
    def test_ordering(self, k):
        assert complete_K(k) > complete_E(k) > 1.0

    def test_monotonicity(self):
        ks = np.linspace(0.05, 0.95, 19)
        Ks = [complete_K(k) for k in ks]
        Es = [complete_E(k) for k in ks]
        assert all(b > a for a, b in zip(Ks, Ks[1:]))
        assert all(b < a for a, b in zip(Es, Es[1:]))

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.3, 1.7])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            complete_K(bad)


class TestLegendre:
    @pytest.mark.parametrize("k,tol", [(0.5, 1e-11), (0.999, 1e-10), (1e-6, 1e-9)])
    def test_pointwise(self, k, tol):
        assert abs(legendre_defect(k)) < tol

    def test_grid(self):
        ks = np.geomspace(1e-6, 1 - 1e-6, 50)
        assert max(abs(legendre_defect(k)) for k in ks) < 1e-11


class TestImaginaryAxis:
    def test_w_values(self):
        assert w_imag(0.0, 0.3) == 1.0
        assert w_imag(1.0, 0.5) == pytest.approx(math.sqrt(2.5), rel=1e-15)

    @pytest.mark.parametrize("u", [3.0, -3.0])
    def test_w_lower_bound(self, u):
        k = 0.5
        assert w_imag(u, k) > math.sqrt(1 + k * k) * abs(u)

    def test_F_zero_and_oracle(self):
        assert incomplete_F_imag(0.0, 0.5) == 0.0
        assert incomplete_F_imag(1.0, 0.5) == pytest.approx(
            0.8512237490711854, abs=1e-12)
        assert incomplete_F_imag(0.7, 0.31) == pytest.approx(
            Fi_oracle(0.7, 0.31), abs=1e-12)

    def test_E_zero_and_oracle(self):
        assert incomplete_E_reg_imag(0.0, 0.5) == 0.0
        assert incomplete_E_reg_imag(2.0, 0.3) == pytest.approx(
            0.9087558987419291, abs=1e-12)

    def test_limits_at_infinity(self):
        k = 0.5
        kp = complementary_modulus(k)
        assert incomplete_F_imag(1e6, k) == pytest.approx(complete_K(kp), abs=1e-5)
        assert incomplete_E_reg_imag(1e6, k) == pytest.approx(
            complete_K(kp) - complete_E(kp), abs=1e-5)

    def test_odd_increasing_bounded(self):
        k = 0.42
        kp = complementary_modulus(k)
        xs = np.linspace(-8, 8, 33)
        vals = [incomplete_F_imag(x, k) for x in xs]
        for x, v in zip(xs, vals):
            assert incomplete_F_imag(-x, k) == pytest.approx(-v, abs=1e-14)
            assert abs(v) < complete_K(kp)
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestLifted:
    def test_zero(self):
        assert lifted_F(0.0, 0.5) == 0.0
        assert lifted_E(0.0, 0.5) == 0.0

    def test_full_turn_increments(self):
        k = 0.5
        kp = complementary_modulus(k)
        assert lifted_F(2 * math.pi, k) == pytest.approx(
            2 * complete_K(kp), abs=1e-11)
        assert lifted_E(2 * math.pi, k) == pytest.approx(
            2 * (complete_K(kp) - complete_E(kp)), abs=1e-11)

    def test_chart_consistency(self):
        k = 0.5
        assert lifted_F(math.pi / 2, k) == pytest.approx(
            incomplete_F_imag(1.0, k), abs=1e-12)
        for xt in np.linspace(-math.pi + 0.01, math.pi - 0.01, 21):
            assert lifted_F(xt, k) == pytest.approx(
                incomplete_F_imag(math.tan(xt / 2), k), abs=1e-12)
            assert lifted_E(xt, k) == pytest.approx(
                incomplete_E_reg_imag(math.tan(xt / 2), k), abs=1e-12)

    def test_quasi_periodicity(self):
        # E F~(x+2pi) - K E~(x+2pi) = E F~(x) - K E~(x) + pi
        rng = np.random.default_rng(11)
        for _ in range(100):
            k = rng.uniform(0.05, 0.95)
            xt = rng.uniform(-10, 10)
            K, E = complete_K(k), complete_E(k)
            lhs = E * lifted_F(xt + 2 * math.pi, k) - K * lifted_E(xt + 2 * math.pi, k)
            rhs = E * lifted_F(xt, k) - K * lifted_E(xt, k) + math.pi
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_single_case_quasi_period(self):
        k, xt = 0.4, 0.7
        K, E = complete_K(k), complete_E(k)
        lhs = E * lifted_F(xt + 2 * math.pi, k) - K * lifted_E(xt + 2 * math.pi, k)
        rhs = E * lifted_F(xt, k) - K * lifted_E(xt, k) + math.pi
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_oddness(self):
        k = 0.3
        for xt in (0.4, 2.0, 5.5, 9.1):
            assert lifted_F(-xt, k) == pytest.approx(-lifted_F(xt, k), abs=1e-12)
            assert lifted_E(-xt, k) == pytest.approx(-lifted_E(xt, k), abs=1e-12)

    def test_strictly_increasing(self):
        k = 0.6
        xs = np.linspace(-7, 7, 57)
        vals = [lifted_F(x, k) for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestWinding:
    @pytest.mark.parametrize("x,expect", [
        (0.0, 0), (3 * math.pi / 2, 1), (-3 * math.pi / 2, -1),
        (2 * math.pi, 1), (7.0, 1), (-0.5, 0),
    ])
    def test_values(self, x, expect):
        assert wind(x) == expect

    def test_boundary_flag(self):
        with pytest.raises(ChartBoundary):
            wind(math.pi)
        with pytest.raises(ChartBoundary):
            wind(3 * math.pi + 1e-12)

    def test_lifted_angle(self):
        a = LiftedAngle(3 * math.pi / 2)
        assert a.winding == 1
        assert a.chart_value == pytest.approx(math.tan(3 * math.pi / 4))
        assert not a.at_infinity
        b = LiftedAngle(math.pi)
        assert b.at_infinity
        with pytest.raises(ChartBoundary):
            b.chart_value
