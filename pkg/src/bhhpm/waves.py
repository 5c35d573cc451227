"""Exact traveling-wave solutions (Deng's two-branch family), a time-Taylor
oracle, and a finite-difference PDE residual checker.

The wave is  u(x,t) = [A + s*A*tanh(a*(x - c*t + x0))]^(1/n)  with amplitude
A = gamma/2, branch sign s, steepness a and speed c taken exactly from the
problem.  The Taylor oracle expands u(x, .) about t = 0 by power-series
recursion on tanh's ODE (w' = -a*c*(1 - w^2)) instead of repeated numeric
differentiation, which would lose digits past order 3.  It is fully
independent of the symbolic engine and anchors its correctness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
from mpmath import mpf

from .errors import EvaluationError, UnsupportedProblemError
from .expalgebra import to_mpf
from .problem import BHProblem
from .scalars import DEFAULT_DIGITS, GUARD_DIGITS, QuadraticNumber, working_dps

#: Pointwise-evaluable space-time function: f(x, t, digits) -> mpf.
PointFunction = Callable[[mpf, mpf, int], mpf]


@dataclass(frozen=True)
class TravelingWave:
    """Exact front parameters; all scalars live in one Q(sqrt(d))."""

    amplitude: QuadraticNumber
    sign: int
    wavenumber: QuadraticNumber
    speed: QuadraticNumber
    shift: QuadraticNumber
    root_index: int = 1

    @classmethod
    def from_problem(cls, problem: BHProblem) -> TravelingWave:
        return cls(
            amplitude=problem.amplitude,
            sign=problem.sign,
            wavenumber=problem.kappa,
            speed=problem.speed,
            shift=problem.x0,
            root_index=problem.n,
        )

    def phase(self, x, t, digits: int = DEFAULT_DIGITS) -> mpf:
        """Argument of tanh: a*(x - c*t + x0)."""
        with working_dps(digits):
            a = self.wavenumber.evalf(mpmath.mp.dps)
            c = self.speed.evalf(mpmath.mp.dps)
            s = self.shift.evalf(mpmath.mp.dps)
            return +(a * (to_mpf(x) - c * to_mpf(t) + s))

    def eval_at(self, x, t, digits: int = DEFAULT_DIGITS) -> mpf:
        """Wave value, relative error below ``10**(-digits + 4)``."""
        with working_dps(digits):
            amp = self.amplitude.evalf(mpmath.mp.dps)
            bracket = amp * (1 + self.sign * mpmath.tanh(self.phase(x, t, digits)))
            if self.root_index == 1:
                return +bracket
            if bracket < 0:
                raise EvaluationError(
                    f"negative base {bracket} under 1/{self.root_index} root"
                )
            return +mpmath.root(bracket, self.root_index)

    def time_taylor_coefficients(
        self, x, order: int, digits: int = DEFAULT_DIGITS
    ) -> Sequence[mpf]:
        """Coefficients of t^0..t^order of u(x, .) about t = 0 (n = 1 only)."""
        if self.root_index != 1:
            raise UnsupportedProblemError("Taylor oracle requires n = 1")
        if order < 0:
            raise ValueError("order must be nonnegative")
        with working_dps(digits):
            a = self.wavenumber.evalf(mpmath.mp.dps)
            c = self.speed.evalf(mpmath.mp.dps)
            s = self.shift.evalf(mpmath.mp.dps)
            b = -a * c  # d(phase)/dt
            w = [mpmath.tanh(a * (to_mpf(x) + s))] + [mpf(0)] * order
            for j in range(order):
                # w' = b*(1 - w^2), advanced by Cauchy products
                conv = sum(w[i] * w[j - i] for i in range(j + 1))
                w[j + 1] = b * ((1 if j == 0 else 0) - conv) / (j + 1)
            amp = self.amplitude.evalf(mpmath.mp.dps)
            return [
                +(amp * ((1 if j == 0 else 0) + self.sign * w[j]))
                for j in range(order + 1)
            ]

    def as_point_function(self) -> PointFunction:
        return lambda x, t, digits: self.eval_at(x, t, digits)


def deng_wave(problem: BHProblem) -> TravelingWave:
    """Exact wave for the problem's branch; parameters are exact field values."""
    return TravelingWave.from_problem(problem)


def pde_residual(
    u: PointFunction,
    problem: BHProblem,
    x,
    t,
    step: Fraction = Fraction(1, 10**8),
    digits: int = DEFAULT_DIGITS,
) -> mpf:
    """|u_t - u_xx + alpha*u^n*u_x - beta*u*(1-u^n)*(u^n-gamma)| at (x, t).

    Derivatives use 5-point central stencils with the given step; the stencil
    evaluations run with enough extra digits to absorb the cancellation of
    nearly equal values, so the result is truncation-limited at O(step^4).
    """
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    # dividing O(step)-cancelling differences by step^2 costs about
    # 2*log10(1/step) digits; work with that margin on top of the target
    cancel = 2 * len(str(step.denominator))
    inner = digits + cancel
    with working_dps(inner + GUARD_DIGITS):
        xv, tv, h = to_mpf(x), to_mpf(t), to_mpf(step)

        def f(xx: mpf, tt: mpf) -> mpf:
            return u(xx, tt, inner)

        ut = (-f(xv, tv + 2 * h) + 8 * f(xv, tv + h) - 8 * f(xv, tv - h) + f(xv, tv - 2 * h)) / (12 * h)
        fp2, fp1, f0, fm1, fm2 = (
            f(xv + 2 * h, tv),
            f(xv + h, tv),
            f(xv, tv),
            f(xv - h, tv),
            f(xv - 2 * h, tv),
        )
        ux = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h)
        uxx = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h)

        alpha = problem.alpha.evalf(mpmath.mp.dps)
        beta = problem.beta.evalf(mpmath.mp.dps)
        gamma = problem.gamma.evalf(mpmath.mp.dps)
        un = f0**problem.n
        residual = ut - uxx + alpha * un * ux - beta * f0 * (1 - un) * (un - gamma)
        return +abs(residual)
