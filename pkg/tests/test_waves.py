import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from bhhpm import BHProblem, case_preset, deng_wave, initial_guess, pde_residual, working_dps
from bhhpm.errors import EvaluationError, UnsupportedProblemError
from conftest import quad

GRID = [(Fraction(x), Fraction(t, 10)) for x in (1, 2, 3) for t in (1, 3, 4)]


class TestWaveParameters:
    def test_case1_closed_form(self):
        w = deng_wave(case_preset(1))
        assert w.sign == 1
        assert w.amplitude == Fraction(1, 2)
        assert w.wavenumber == quad(0, Fraction(1, 4), 2)   # 1/(2*sqrt(2))
        assert w.speed == quad(0, Fraction(1, 2), 2)        # 1/sqrt(2)
        assert w.shift == 0 and w.root_index == 1

    def test_case2_closed_form(self):
        w = deng_wave(case_preset(2))
        assert w.sign == -1
        assert w.amplitude == Fraction(1, 2)
        assert w.wavenumber == Fraction(1, 4)
        assert w.speed == Fraction(-3, 2)

    def test_case3_closed_form(self):
        w = deng_wave(case_preset(3))
        assert w.sign == -1
        assert w.amplitude == Fraction(3, 2)
        assert w.wavenumber == quad(Fraction(-3, 4), Fraction(3, 4), 3)
        assert w.speed == quad(Fraction(-5, 2), Fraction(1, 2), 3)


class TestEvaluation:
    def test_center_value(self):
        for cid in (1, 2):
            w = deng_wave(case_preset(cid))
            assert w.eval_at(0, 0, 30) == mpf("0.5")

    def test_case2_long_time_limit(self):
        w = deng_wave(case_preset(2))
        assert w.eval_at(0, 200, 30) < mpf("1e-20")

    def test_case1_reference_point(self):
        # independent tanh-form computation at (1, 1/10)
        with working_dps(30):
            value = deng_wave(case_preset(1)).eval_at(1, Fraction(1, 10), 30)
            a = mpmath.sqrt(2) / 4
            oracle = mpf(1) / 2 + mpmath.tanh(a * (1 - mpmath.sqrt(2) / 2 * mpf("0.1"))) / 2
            assert mpmath.almosteq(value, oracle, rel_eps=mpf("1e-26"))

    def test_tanh_exponential_identity(self):
        # A +/- A*tanh(theta) equals 2A*e^(+/-theta)/(e^theta + e^-theta)
        rng = random.Random(13)
        with working_dps(30):
            for _ in range(25):
                theta = mpf(rng.randint(-300, 300)) / 100
                A = mpf(rng.randint(1, 12)) / 4
                for s in (1, -1):
                    lhs = A + s * A * mpmath.tanh(theta)
                    rhs = 2 * A * mpmath.exp(s * theta) / (mpmath.exp(theta) + mpmath.exp(-theta))
                    assert mpmath.almosteq(lhs, rhs, rel_eps=mpf("1e-25"))

    def test_matches_initial_guess_at_t0(self):
        with working_dps(30):
            for cid in (1, 2, 3):
                p = case_preset(cid)
                w = deng_wave(p)
                u0 = initial_guess(p)
                for i in range(10):
                    x = Fraction(i * 3 - 14, 5)
                    assert mpmath.almosteq(
                        w.eval_at(x, 0, 30), u0.eval_at(x, 30), rel_eps=mpf("1e-25")
                    )

    def test_shift_moves_the_front(self):
        p = BHProblem(alpha=0, beta=1, gamma=1, x0=quad(2))
        w = deng_wave(p)
        w0 = deng_wave(case_preset(1))
        with working_dps(30):
            a = w.eval_at(1, Fraction(1, 10), 30)
            b = w0.eval_at(3, Fraction(1, 10), 30)
            assert mpmath.almosteq(a, b, rel_eps=mpf("1e-26"))

    def test_fractional_root_wave(self):
        p = BHProblem(alpha=1, beta=1, gamma=Fraction(1, 2), n=2)
        w = deng_wave(p)
        with working_dps(30):
            value = w.eval_at(0, 0, 30)
            assert mpmath.almosteq(value, mpmath.sqrt(mpf("0.25")), rel_eps=mpf("1e-26"))

    def test_negative_base_rejected(self):
        p = BHProblem(alpha=1, beta=1, gamma=-Fraction(1, 2), n=2)
        w = deng_wave(p)
        with pytest.raises(EvaluationError):
            w.eval_at(0, 0, 30)


class TestTaylorOracle:
    def test_order_zero_is_initial_value(self):
        for cid in (1, 2, 3):
            w = deng_wave(case_preset(cid))
            with working_dps(30):
                for x in (-1, 0, 2):
                    coeffs = w.time_taylor_coefficients(x, 0, 30)
                    assert mpmath.almosteq(coeffs[0], w.eval_at(x, 0, 30), rel_eps=mpf("1e-26"))

    def test_case1_linear_coefficient_at_origin(self):
        w = deng_wave(case_preset(1))
        coeffs = w.time_taylor_coefficients(0, 2, 30)
        with working_dps(30):
            assert mpmath.almosteq(coeffs[1], mpf("-0.125"), rel_eps=mpf("1e-26"))
        assert coeffs[2] == 0  # odd front profile kills even orders at x = 0

    def test_series_sums_to_wave_value(self):
        # partial Taylor sums converge to the pointwise value for small t
        with working_dps(40):
            for cid in (1, 2, 3):
                w = deng_wave(case_preset(cid))
                x, t = mpf(1), mpf("0.01")
                coeffs = w.time_taylor_coefficients(x, 12, 40)
                total = sum(c * t**k for k, c in enumerate(coeffs))
                assert mpmath.almosteq(total, w.eval_at(x, t, 40), rel_eps=mpf("1e-22"))

    def test_root_index_above_one_rejected(self):
        p = BHProblem(alpha=1, beta=1, gamma=Fraction(1, 2), n=2)
        with pytest.raises(UnsupportedProblemError):
            deng_wave(p).time_taylor_coefficients(0, 3, 30)


class TestResidual:
    def test_zero_function_is_steady(self):
        zero = lambda x, t, digits: mpf(0)
        r = pde_residual(zero, case_preset(1), 1, Fraction(1, 10))
        assert r == 0

    def test_exact_wave_case1(self):
        w = deng_wave(case_preset(1))
        r = pde_residual(w.as_point_function(), case_preset(1), 1, Fraction(3, 10))
        assert r < mpf("1e-15")

    def test_exact_wave_case3(self):
        w = deng_wave(case_preset(3))
        r = pde_residual(w.as_point_function(), case_preset(3), 2, Fraction(2, 5))
        assert r < mpf("1e-15")

    @pytest.mark.parametrize("cid", [1, 2, 3])
    def test_exact_wave_full_grid(self, cid):
        p = case_preset(cid)
        w = deng_wave(p)
        func = w.as_point_function()
        for x, t in GRID:
            assert pde_residual(func, p, x, t) < mpf("1e-15")

    def test_higher_root_wave_solves_pde(self):
        # both branches for n = 2 satisfy the equation
        for branch in ("upper", "lower"):
            p = BHProblem(alpha=1, beta=1, gamma=Fraction(1, 2), n=2, branch=branch)
            w = deng_wave(p)
            r = pde_residual(w.as_point_function(), p, Fraction(1, 2), Fraction(1, 10))
            assert r < mpf("1e-15")

    def test_bad_step_rejected(self):
        w = deng_wave(case_preset(1))
        with pytest.raises(ValueError):
            pde_residual(w.as_point_function(), case_preset(1), 1, 0, step=Fraction(0))
