"""Closing functions S, T0, T~, the level-set solver and component logic."""

import math
from fractions import Fraction

import numpy as np
import pytest

from harmonictori.curves import (
    BranchPair, ModuliPoint, deck_iota_tilde, deck_lambda_tilde,
    forward_coords, inverse_coords,
)
from harmonictori.moduli import (
    ComponentId, LevelSolveError, S_value, T0_value, T_tilde, best_rational,
    classify_component, dT0_du, dT_tilde_du_tilde, dt0_du_raw,
    moduli_summary, solve_level, spectral_test, sweep_level_set, t0_raw,
    t_tilde_raw,
)


def test_solver_reports_bracket_on_unreachable_level():
    with pytest.raises(LevelSolveError) as err:
        solve_level(1.0, 1e15, 0.5, 0.3)
    assert err.value.bracket is not None

RNG = np.random.default_rng(17)


def random_pair(radius=0.8, min_gap=5e-2):
    while True:
        a = complex(*RNG.uniform(-radius, radius, 2))
        b = complex(*RNG.uniform(-radius, radius, 2))
        if abs(a) < radius and abs(b) < radius and abs(a - b) > min_gap:
            return BranchPair(a, b)


def random_point(p=None):
    p = p if p is not None else RNG.uniform(0.25, 4.0)
    k = RNG.uniform(0.1, 0.9)
    ut = RNG.uniform(-math.pi, math.pi - 1e-3)
    vt = ut + RNG.uniform(0.05, 2 * math.pi - 0.1)
    return ModuliPoint(p=p, k=k, u_tilde=ut, v_tilde=vt)


class TestS:
    def test_symmetric(self):
        assert S_value(BranchPair(0.4j, -0.4j)) == pytest.approx(1.0)

    def test_third(self):
        assert S_value(BranchPair(0.0, 0.5)) == pytest.approx(1.0 / 3.0)

    def test_chi_inverts(self):
        for _ in range(100):
            bp = random_pair()
            assert S_value(bp) * S_value(BranchPair(-bp.alpha, -bp.beta)) \
                == pytest.approx(1.0, abs=1e-12)


class TestT0:
    def test_gamma_integral_identity(self):
        # 2 pi i T0 = S * (gamma- integral) - (gamma+ integral)
        from harmonictori.curves import build_frame
        from harmonictori.differentials import theta_P_gamma_closed
        for _ in range(10):
            bp = random_pair()
            fr = build_frame(bp)
            if min(abs(fr.nu - 1), abs(fr.nu + 1)) < 1e-6:
                continue
            s = S_value(bp)
            lhs = 2j * math.pi * t0_raw(s, fr.k, fr.u, fr.v)
            rhs = s * theta_P_gamma_closed(-1, fr) - theta_P_gamma_closed(1, fr)
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_symmetric_annulus_principal_value(self):
        # the inversion-symmetric curves carry T0 = -1 in the principal
        # chart (the zero class mod Z<1, S>), and T~ = +1 on the principal lift
        for _ in range(20):
            r, th = RNG.uniform(0.1, 0.8), RNG.uniform(0.05, math.pi - 0.05)
            a = r * np.exp(1j * th)
            bp = BranchPair(a, -a)
            mp = forward_coords(bp)
            assert T0_value(mp) == pytest.approx(-1.0, abs=1e-9)
            assert T_tilde(mp) == pytest.approx(1.0, abs=1e-9)

    def test_inversion_symmetry(self):
        for _ in range(100):
            p = RNG.uniform(0.2, 5.0)
            k = RNG.uniform(0.1, 0.9)
            u, v = RNG.uniform(-3, 3, 2)
            if abs(u - v) < 1e-2:
                continue
            assert t0_raw(p, k, u, v) == pytest.approx(
                -p * t0_raw(1.0 / p, k, v, u), abs=1e-10)

    def test_diverges_on_diagonal(self):
        p, k, v = 1.3, 0.5, 0.7
        assert abs(t0_raw(p, k, v + 1e-4, v)) > 1e3
        assert abs(t0_raw(p, k, v - 1e-4, v)) > 1e3
        with pytest.raises(ValueError):
            t0_raw(p, k, v, v)


class TestTtilde:
    def test_equals_T0_when_windings_vanish(self):
        for _ in range(20):
            k = RNG.uniform(0.1, 0.9)
            ut = RNG.uniform(-math.pi + 0.05, math.pi - 0.1)
            vt = RNG.uniform(ut + 0.05, math.pi - 0.01)
            if vt <= ut:
                continue
            p = RNG.uniform(0.3, 3.0)
            mp = ModuliPoint(p=p, k=k, u_tilde=ut, v_tilde=vt)
            assert T_tilde(mp) == pytest.approx(T0_value(mp), abs=1e-12)

    def test_winding_relation(self):
        from harmonictori.elliptic import wind
        for _ in range(50):
            mp = random_point()
            shift_u = RNG.integers(-2, 3)
            ut = mp.u_tilde + 2 * math.pi * shift_u
            vt = mp.v_tilde + 2 * math.pi * shift_u
            big = ModuliPoint(p=mp.p, k=mp.k, u_tilde=ut, v_tilde=vt)
            expect = (T0_value(big)
                      + 2 * (mp.p * wind(big.v_tilde) - wind(big.u_tilde)))
            assert T_tilde(big) == pytest.approx(expect, abs=1e-10)

    def test_deck_shift(self):
        for p in (1 / 3, 1 / 2, 1.0, 2.0, 3.0):
            for _ in range(40):
                mp = random_point(p=p)
                lam = deck_lambda_tilde(mp)
                assert T_tilde(lam) - T_tilde(mp) == pytest.approx(p - 1.0, abs=1e-9)

    def test_full_turn_shift(self):
        for _ in range(20):
            mp = random_point()
            iota = deck_iota_tilde(mp)
            assert T_tilde(iota) - T_tilde(mp) == pytest.approx(
                2 * (mp.p - 1.0), abs=1e-9)

    def test_range_is_unbounded(self):
        p, k, vt = 1.5, 0.5, 1.0
        assert t_tilde_raw(p, k, vt - 1e-5, vt) > 1e3
        assert t_tilde_raw(p, k, vt - 2 * math.pi + 1e-5, vt) < -1e3


class TestDerivative:
    def test_positive_for_p_geq_1(self):
        for p in (1.0, 1.5, 2.0, 4.0):
            for _ in range(25):
                mp = random_point(p=p)
                assert dT0_du(mp) > 0.0
                assert dT_tilde_du_tilde(p, mp.k, mp.u_tilde, mp.v_tilde) > 0.0

    def test_finite_difference(self):
        h = 1e-6
        for _ in range(50):
            mp = random_point()
            u, v = mp.u, mp.v
            if abs(u - v) < 0.05 or abs(u) > 20:
                continue
            fd = (t0_raw(mp.p, mp.k, u + h, v) - t0_raw(mp.p, mp.k, u - h, v)) / (2 * h)
            assert dt0_du_raw(mp.p, mp.k, u, v) == pytest.approx(fd, rel=1e-6)

    def test_boundary_limit_form(self):
        # the u~ = pi limit matches neighbouring finite-chart values
        p, k = 1.5, 0.45
        vt = math.pi + 1.2
        at_boundary = dT_tilde_du_tilde(p, k, math.pi, vt)
        near = dT_tilde_du_tilde(p, k, math.pi - 1e-7, vt)
        assert at_boundary == pytest.approx(near, rel=1e-6)
        v = math.tan(vt / 2)
        from harmonictori.elliptic import complete_E, complete_K, w_imag
        K, E = complete_K(k), complete_E(k)
        explicit = (-E + p * k * K * w_imag(v, k) + K * (1 + k * k * v * v)) / (math.pi * k)
        assert at_boundary == pytest.approx(explicit, rel=1e-12)


class TestSolver:
    def test_chi_annulus_of_level_one(self):
        mp = solve_level(1.0, 1.0, 0.5, 0.3)
        bp = inverse_coords(mp)
        assert abs(bp.alpha + bp.beta) < 1e-8
        assert abs(T_tilde(mp) - 1.0) < 1e-10

    def test_level_solution_consistency(self):
        mp = solve_level(1 / 3, 0.0, 0.5, 0.2)
        assert abs(T_tilde(mp)) < 1e-10
        assert S_value(inverse_coords(mp)) == pytest.approx(1 / 3, abs=1e-9)

    def test_p_geq_one_convention(self):
        mp = solve_level(2.0, 0.4, 0.5, 1.1)
        assert mp.v_tilde == 1.1
        assert mp.v_tilde - 2 * math.pi < mp.u_tilde < mp.v_tilde

    def test_deck_translated_levels_agree(self):
        p, k = 1.7, 0.5
        mp = solve_level(p, 0.37, k, 1.0)
        lam = deck_lambda_tilde(mp)
        mp2 = solve_level(p, 0.37 + (p - 1.0), k, lam.v_tilde)
        assert mp2.u_tilde == pytest.approx(lam.u_tilde, abs=1e-8)

    def test_random_levels(self):
        for _ in range(15):
            p = RNG.uniform(0.3, 3.0)
            q = RNG.uniform(-3, 3)
            k = RNG.uniform(0.15, 0.85)
            ang = RNG.uniform(-2, 2)
            mp = solve_level(p, q, k, ang)
            assert abs(T_tilde(mp) - q) < 1e-10
            assert mp.u_tilde < mp.v_tilde < mp.u_tilde + 2 * math.pi

    def test_graph_property(self):
        # distinct fixed angles give distinct, continuously varying solutions
        p, q, k = 0.6, 0.25, 0.5
        angs = np.linspace(0.0, 1.0, 9)
        sols = [solve_level(p, q, k, a).v_tilde for a in angs]
        diffs = np.diff(sols)
        assert all(abs(d) > 0 for d in diffs)
        assert max(abs(d) for d in diffs) < 1.0


class TestSweep:
    def test_annulus_closes(self):
        mesh = sweep_level_set(Fraction(1), Fraction(0), 3, 9, 2 * math.pi,
                               k_min=0.3, k_max=0.6)
        assert mesh.complete
        per_k = len(mesh.angle_values)
        for row in range(3):
            first = mesh.records[row * per_k]
            last = mesh.records[row * per_k + per_k - 1]
            assert abs(first.alpha - last.alpha) < 1e-8
            assert abs(first.beta - last.beta) < 1e-8

    def test_annulus_half_turn_reaches_relabeled_pair(self):
        # advancing the rescaled free angle by pi lands on the same curve
        # with the branch points relabeled: the annulus closes downstairs
        from harmonictori.curves import angle_rescale
        q, k, ut0 = 0.25, 0.5, 0.3
        mp0 = solve_level(1.0, q, k, ut0)
        bp0 = inverse_coords(mp0)
        rk = math.sqrt(k)
        ut1 = angle_rescale(angle_rescale(ut0, rk) + math.pi, 1.0 / rk)
        bp1 = inverse_coords(solve_level(1.0, q, k, ut1))
        assert abs(bp1.alpha - bp0.beta) < 1e-8
        assert abs(bp1.beta - bp0.alpha) < 1e-8

    def test_helicoid_does_not_close(self):
        mesh = sweep_level_set(Fraction(1, 2), Fraction(0), 2, 7, 2 * math.pi,
                               k_min=0.4, k_max=0.5)
        assert mesh.complete
        per_k = len(mesh.angle_values)
        first, last = mesh.records[0], mesh.records[per_k - 1]
        assert abs(first.alpha - last.alpha) > 1e-3

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            sweep_level_set(Fraction(1), Fraction(0), 1, 8, 1.0)

    def test_helicoid_records_detect_to_same_component(self):
        # principal lifts of swept points may differ from the solved leaf by
        # deck shifts, but the detected ratio and component class are stable
        p, q = Fraction(2), Fraction(1, 3)
        mesh = sweep_level_set(p, q, 2, 6, 2 * math.pi, k_min=0.35, k_max=0.6)
        target = classify_component(p, q)
        for r in mesh.records:
            got = spectral_test(BranchPair(r.alpha, r.beta), 30)
            assert got is not None and got[0] == p
            assert classify_component(*got) == target


class TestClassification:
    def test_annulus(self):
        c = classify_component(Fraction(1), Fraction(3))
        assert c == ComponentId("annulus", Fraction(1), Fraction(3))

    def test_helicoid_residues(self):
        a = classify_component(Fraction(1, 2), Fraction(0))
        b = classify_component(Fraction(1, 2), Fraction(-1, 2))
        assert a == b
        assert a.q_class == Fraction(0)

    def test_integer_p(self):
        assert classify_component(Fraction(2), Fraction(0)) == \
            classify_component(Fraction(2), Fraction(1))
        assert classify_component(Fraction(2), Fraction(1, 2)) != \
            classify_component(Fraction(2), Fraction(0))

    def test_residue_canonical_range(self):
        for _ in range(50):
            p = Fraction(int(RNG.integers(1, 9)), int(RNG.integers(1, 9)))
            if p == 1:
                continue
            q = Fraction(int(RNG.integers(-20, 20)), int(RNG.integers(1, 9)))
            r = classify_component(p, q).q_class
            assert 0 <= r < abs(p - 1)


class TestSpectralDetection:
    def test_round_trip(self):
        mp = solve_level(1 / 3, 1 / 4, 0.5, 0.2)
        assert spectral_test(inverse_coords(mp), 20) == (Fraction(1, 3), Fraction(1, 4))

    def test_generic_pair_rejected(self):
        assert spectral_test(BranchPair(0.3 + 0.2j, 0.4 - 0.1j), 20) is None

    def test_chi_fixed_curves(self):
        # intrinsic label of the inversion-symmetric annulus is (1, 1)
        got = spectral_test(BranchPair(0.25 + 0.15j, -0.25 - 0.15j), 20)
        assert got == (Fraction(1), Fraction(1))

    def test_best_rational(self):
        # 311/99 is the semiconvergent beating 22/7 under the same cap
        assert best_rational(math.pi, 100) == Fraction(311, 99)
        assert best_rational(math.pi, 7) == Fraction(22, 7)
        assert best_rational(math.pi, 1000) == Fraction(355, 113)
        assert best_rational(-0.25, 10) == Fraction(-1, 4)


class TestSummary:
    def test_annulus_zero(self):
        s = moduli_summary(Fraction(1), Fraction(0))
        assert (s.l, s.monodromy) == (1, -1)
        assert s.component.kind == "annulus"

    def test_annulus_half(self):
        s = moduli_summary(Fraction(1), Fraction(1, 2))
        assert (s.l, s.monodromy) == (2, -2)

    def test_helicoid(self):
        s = moduli_summary(Fraction(1, 3), Fraction(0))
        assert s.component.kind == "helicoid"
        assert s.l == 1
        assert s.monodromy is None
        assert "Mat2*(Z) x S^1" in s.fibre

    def test_l_values(self):
        assert moduli_summary(Fraction(1, 3), Fraction(1, 4)).l == 4
        assert moduli_summary(Fraction(2), Fraction(1, 3)).l == 3
