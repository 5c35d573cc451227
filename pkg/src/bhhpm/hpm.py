"""Order-by-order construction of the perturbation series.

The solution is expanded as v = sum_k p^k v_k in an embedding parameter p.
The zeroth term is the initial profile (time-independent), and each later
term solves  dv_k/dt = [p^(k-1) coefficient of N(v)]  with v_k(x, 0) = 0,
where N(v) = v_xx - alpha*v^n*v_x + beta*((1+gamma)*v^(n+1) - gamma*v -
v^(2n+1)) is the full spatial operator.  The reaction polynomial is expanded
generically and p-coefficients are extracted by exact Cauchy-product
convolution, so no per-case hand-expanded forms enter the engine; the
published closed forms serve as test oracles instead.

Every v_k is a polynomial in t whose coefficients are ExpRational spatial
profiles; for the benchmark problems each v_k collapses to a single t^k
monomial, which the test suite asserts.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mpf

from .errors import ContractViolation, UnsupportedProblemError
from .expalgebra import CoefficientLike, ExpRational, LaurentPoly, to_mpf
from .problem import BHProblem
from .scalars import DEFAULT_DIGITS, QuadraticNumber, working_dps


class TimePolynomial:
    """Polynomial in t with ExpRational coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs", "kappa")

    def __init__(self, coeffs: list[ExpRational] | tuple[ExpRational, ...], kappa: QuadraticNumber) -> None:
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        for c in coeffs:
            if c.kappa != kappa:
                raise ContractViolation("coefficient rate differs from the polynomial's")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "kappa", kappa)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TimePolynomial values are immutable")

    @classmethod
    def zero(cls, kappa: QuadraticNumber) -> TimePolynomial:
        return cls((), kappa)

    @classmethod
    def from_spatial(cls, profile: ExpRational) -> TimePolynomial:
        return cls((profile,), profile.kappa)

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, j: int) -> ExpRational:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ExpRational.zero(self.kappa)

    def __add__(self, other: TimePolynomial) -> TimePolynomial:
        if not isinstance(other, TimePolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for j, c in enumerate(b):
            merged[j] = merged[j] + c
        return TimePolynomial(merged, self.kappa)

    def __sub__(self, other: TimePolynomial) -> TimePolynomial:
        return self + (-other)

    def __neg__(self) -> TimePolynomial:
        return TimePolynomial([-c for c in self.coeffs], self.kappa)

    def __mul__(self, other: TimePolynomial | CoefficientLike) -> TimePolynomial:
        if isinstance(other, (int, Fraction, QuadraticNumber)):
            return self.scaled(other)
        if not isinstance(other, TimePolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return TimePolynomial.zero(self.kappa)
        out = [ExpRational.zero(self.kappa) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return TimePolynomial(out, self.kappa)

    def __rmul__(self, other: CoefficientLike) -> TimePolynomial:
        return self.scaled(other)

    def scaled(self, factor: CoefficientLike) -> TimePolynomial:
        return TimePolynomial([c.scaled(factor) for c in self.coeffs], self.kappa)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TimePolynomial):
            return self.kappa == other.kappa and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.kappa))

    def diff_x(self) -> TimePolynomial:
        return TimePolynomial([c.diff_x() for c in self.coeffs], self.kappa)

    def integrate_t(self) -> TimePolynomial:
        """Definite integral from 0 to t:  a_j t^j -> a_j t^(j+1)/(j+1)."""
        out = [ExpRational.zero(self.kappa)]
        for j, c in enumerate(self.coeffs):
            out.append(c.scaled(Fraction(1, j + 1)))
        return TimePolynomial(out, self.kappa)

    def eval_at(self, x, t, digits: int = DEFAULT_DIGITS) -> mpf:
        with working_dps(digits):
            tv = to_mpf(t)
            total = mpf(0)
            power = mpf(1)
            for c in self.coeffs:
                if not c.is_zero:
                    total += c.eval_at(x, digits) * power
                power *= tv
            return +total

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c} * t")
            else:
                parts.append(f"{c} * t^{j}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TimePolynomial({list(self.coeffs)!r})"


def initial_guess(problem: BHProblem) -> ExpRational:
    """Initial profile u(x, 0) as an ExpRational.

    upper branch: gamma*E/(E + 1/E), lower branch: gamma/E/(E + 1/E), with
    E = exp(kappa*x).  Only n = 1 keeps the profile inside this
    representation; nonzero x0 would require the transcendental constant
    exp(kappa*x0), so both are rejected here.
    """
    if problem.n != 1:
        raise UnsupportedProblemError(
            f"symbolic series requires n = 1 (got n = {problem.n}); "
            "the exact wave still evaluates numerically"
        )
    if not problem.x0.is_zero():
        raise UnsupportedProblemError("symbolic series requires x0 = 0")
    if problem.kappa.is_zero():
        raise UnsupportedProblemError("front steepness kappa is zero; no wave profile")
    num = LaurentPoly.monomial(problem.sign, problem.gamma)
    den = LaurentPoly({1: 1, -1: 1})
    return ExpRational(num, den, problem.kappa)


def _series_mul(
    a: list[TimePolynomial], b: list[TimePolynomial], upto: int, kappa: QuadraticNumber
) -> list[TimePolynomial]:
    """Cauchy product of two truncated p-series, keeping orders 0..upto."""
    out = [TimePolynomial.zero(kappa) for _ in range(upto + 1)]
    for i, ai in enumerate(a[: upto + 1]):
        if ai.is_zero:
            continue
        for j in range(min(len(b), upto + 1 - i)):
            if not b[j].is_zero:
                out[i + j] = out[i + j] + ai * b[j]
    return out


class HPMExpansion:
    """Computed series terms v_0..v_K for one problem."""

    __slots__ = ("problem", "terms")

    def __init__(self, problem: BHProblem, terms: tuple[TimePolynomial, ...]) -> None:
        if not terms:
            raise ContractViolation("an expansion needs at least the order-0 term")
        object.__setattr__(self, "problem", problem)
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HPMExpansion values are immutable")

    @classmethod
    def start(cls, problem: BHProblem) -> HPMExpansion:
        return cls(problem, (TimePolynomial.from_spatial(initial_guess(problem)),))

    @classmethod
    def from_initial(cls, problem: BHProblem, v0: ExpRational) -> HPMExpansion:
        """Start from an explicit time-independent profile (e.g. a steady state)."""
        return cls(problem, (TimePolynomial.from_spatial(v0),))

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def kappa(self) -> QuadraticNumber:
        return self.terms[0].kappa

    def _operator_coefficient(self, j: int) -> TimePolynomial:
        """p^j coefficient of N(v) from the terms computed so far."""
        problem, kappa = self.problem, self.kappa
        P = list(self.terms[: j + 1])
        while len(P) <= j:
            P.append(TimePolynomial.zero(kappa))
        n = problem.n
        # W = P^n truncated at order j
        W = P
        for _ in range(n - 1):
            W = _series_mul(W, P, j, kappa)
        Px = [tp.diff_x() for tp in P]
        PW = _series_mul(P, W, j, kappa)        # v^(n+1)
        PWW = _series_mul(PW, W, j, kappa)      # v^(2n+1)
        WPx = _series_mul(W, Px, j, kappa)      # v^n * v_x

        diffusion = self.terms[j].diff_x().diff_x() if j < len(self.terms) else TimePolynomial.zero(kappa)
        convection = WPx[j].scaled(-problem.alpha)
        gamma = problem.gamma
        reaction = (
            PW[j].scaled(gamma + 1) - P[j].scaled(gamma) - PWW[j]
        ).scaled(problem.beta)
        return diffusion + convection + reaction

    def rhs_order(self, k: int) -> TimePolynomial:
        """Right-hand side of the order-k equation dv_k/dt = RHS_k.

        This is the p^(k-1) coefficient of the spatial operator applied to
        the series; the time derivative of the order-0 profile, formally
        subtracted at k = 1, vanishes because v_0 is time-independent.
        """
        if k < 1:
            raise ContractViolation("order 0 is the initial profile, not an RHS")
        if k > len(self.terms):
            raise ContractViolation(
                f"rhs_order({k}) needs terms v_0..v_{k - 1}; have {len(self.terms)}"
            )
        return self._operator_coefficient(k - 1)

    def advanced(self) -> HPMExpansion:
        """Expansion with the next term appended (t-integral of the RHS)."""
        k = len(self.terms)
        v_k = self.rhs_order(k).integrate_t()
        return HPMExpansion(self.problem, self.terms + (v_k,))

    def partial_sum(self, m: int) -> TimePolynomial:
        """Sum of the first m terms as one TimePolynomial."""
        if not 1 <= m <= len(self.terms):
            raise ContractViolation(
                f"partial sum of {m} terms requested; have {len(self.terms)}"
            )
        total = self.terms[0]
        for term in self.terms[1:m]:
            total = total + term
        return total

    def partial_sum_at(self, m: int, x, t, digits: int = DEFAULT_DIGITS) -> mpf:
        if not 1 <= m <= len(self.terms):
            raise ContractViolation(
                f"partial sum of {m} terms requested; have {len(self.terms)}"
            )
        with working_dps(digits):
            total = mpf(0)
            for term in self.terms[:m]:
                total += term.eval_at(x, t, digits)
            return +total


def run_hpm(problem: BHProblem, order: int) -> HPMExpansion:
    """Compute terms v_0..v_order exactly."""
    if order < 1:
        raise ContractViolation("order must be at least 1")
    expansion = HPMExpansion.start(problem)
    for _ in range(order):
        expansion = expansion.advanced()
    return expansion


def max_taylor_deviation(
    expansion: HPMExpansion, wave, xs, max_order: int | None = None,
    digits: int = DEFAULT_DIGITS,
) -> mpf:
    """Worst deviation of each v_k's t^k coefficient from the exact wave's
    time-Taylor coefficients over the sample points.

    Deviations are relative to the oracle coefficient; where the oracle is
    exactly zero (symmetry points) they are measured against the largest
    oracle coefficient at that x instead, so an exact structural zero on the
    symbolic side registers as zero deviation rather than 0/0.
    """
    if max_order is None:
        max_order = expansion.order
    if max_order > expansion.order:
        raise ContractViolation(
            f"expansion has order {expansion.order}, cannot check {max_order}"
        )
    with working_dps(digits):
        worst = mpf(0)
        for x in xs:
            oracle = wave.time_taylor_coefficients(x, max_order, digits)
            scale = max(abs(c) for c in oracle) or mpf(1)
            for k in range(1, max_order + 1):
                symbolic = expansion.terms[k].coefficient(k).eval_at(x, digits)
                denom = abs(oracle[k]) if oracle[k] != 0 else scale
                worst = max(worst, abs(symbolic - oracle[k]) / denom)
        return +worst
