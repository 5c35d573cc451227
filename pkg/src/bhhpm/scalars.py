"""Exact scalars: big rationals, the quadratic field Q(sqrt(d)), and
extended-precision rendering.

``BigRational`` is the stdlib ``fractions.Fraction`` (arbitrary-precision,
always normalized with positive denominator).  ``QuadraticNumber`` represents
``a + b*sqrt(d)`` with rational a, b and a fixed square-free radicand d;
values with b == 0 are normalized to radicand 0 so that rationals from
different contexts compare equal.  Extended-precision evaluation goes through
mpmath with a guard-digit margin on top of the requested precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mpf

from .errors import AlgebraDomainError

BigRational = Fraction

#: Default number of significant decimal digits for numeric rendering.
DEFAULT_DIGITS = 30

#: Extra working digits used internally by every evaluation routine.
GUARD_DIGITS = 10

# Trial-division bound for square-free decomposition; any cofactor below
# _TRIAL_LIMIT**2 left after dividing out primes <= _TRIAL_LIMIT is
# automatically square-free.
_TRIAL_LIMIT = 1_000_000

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QuadraticNumber"]


def working_dps(digits: int):
    """mpmath context manager running at ``digits`` plus guard digits."""
    return mpmath.workdps(digits + GUARD_DIGITS)


def fraction_to_mpf(value: RationalLike) -> mpf:
    """Convert an int or Fraction to mpf at the current working precision."""
    if isinstance(value, int):
        return mpf(value)
    return mpf(value.numerator) / value.denominator


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * d`` with d square-free; return ``(s, d)``.

    Trial division up to ``_TRIAL_LIMIT``; a remaining cofactor is accepted
    if it is 1, a perfect square, or small enough that square-freeness is
    forced.  Larger undecidable cofactors raise ValueError rather than
    silently guessing.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n in (0, 1):
        return 1, n
    s, d, rem = 1, 1, n
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= rem:
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if rem > 1:
        r = math.isqrt(rem)
        if r * r == rem:
            s *= r
        elif rem < _TRIAL_LIMIT * _TRIAL_LIMIT:
            d *= rem
        else:
            raise ValueError(f"cannot certify square-free part of {n}")
    return s, d


@dataclass(frozen=True, eq=False)
class QuadraticNumber:
    """Exact element ``rational + radical*sqrt(radicand)`` of Q(sqrt(d)).

    The radicand is kept square-free; purely rational values are stored with
    radicand 0.  Two values can be combined arithmetically only when their
    radicands agree or one side is purely rational.
    """

    rational: Fraction = Fraction(0)
    radical: Fraction = Fraction(0)
    radicand: int = 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.radical == 0 and self.rational == other
        if isinstance(other, QuadraticNumber):
            return (
                self.rational == other.rational
                and self.radical == other.radical
                and self.radicand == other.radicand
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self.radical == 0:
            return hash(self.rational)
        return hash((self.rational, self.radical, self.radicand))

    def __post_init__(self) -> None:
        rational = Fraction(self.rational)
        radical = Fraction(self.radical)
        s, d = squarefree_decompose(self.radicand)
        if s != 1:
            radical *= s
        if d == 1:
            rational += radical
            radical = Fraction(0)
            d = 0
        if radical == 0:
            d = 0
        object.__setattr__(self, "rational", rational)
        object.__setattr__(self, "radical", radical)
        object.__setattr__(self, "radicand", d)

    @classmethod
    def from_rational(cls, value: RationalLike) -> QuadraticNumber:
        return cls(Fraction(value))

    @classmethod
    def coerce(cls, value: ScalarLike) -> QuadraticNumber:
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a quadratic number")

    @property
    def is_rational(self) -> bool:
        return self.radical == 0

    def is_zero(self) -> bool:
        return self.rational == 0 and self.radical == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _join_radicand(self, other: QuadraticNumber) -> int:
        if self.radicand == 0:
            return other.radicand
        if other.radicand in (0, self.radicand):
            return self.radicand
        raise AlgebraDomainError(
            f"mixed radicands sqrt({self.radicand}) and sqrt({other.radicand})"
        )

    def __add__(self, other: ScalarLike) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            other = QuadraticNumber.from_rational(other)
        elif not isinstance(other, QuadraticNumber):
            return NotImplemented
        d = self._join_radicand(other)
        return QuadraticNumber(
            self.rational + other.rational, self.radical + other.radical, d
        )

    def __radd__(self, other: ScalarLike) -> QuadraticNumber:
        return self + other

    def __sub__(self, other: ScalarLike) -> QuadraticNumber:
        return self + (-QuadraticNumber.coerce(other))

    def __rsub__(self, other: ScalarLike) -> QuadraticNumber:
        return (-self) + other

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.rational, -self.radical, self.radicand)

    def __mul__(self, other: ScalarLike) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(
                self.rational * other, self.radical * other, self.radicand
            )
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        d = self._join_radicand(other)
        rational = self.rational * other.rational + self.radical * other.radical * d
        radical = self.rational * other.radical + self.radical * other.rational
        return QuadraticNumber(rational, radical, d)

    def __rmul__(self, other: ScalarLike) -> QuadraticNumber:
        return self * other

    def __truediv__(self, other: ScalarLike) -> QuadraticNumber:
        return self * QuadraticNumber.coerce(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> QuadraticNumber:
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> QuadraticNumber:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadraticNumber.from_rational(1)
        base = self
        n = exponent
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.rational, -self.radical, self.radicand)

    def inverse(self) -> QuadraticNumber:
        # 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2 - b^2 d); the norm vanishes
        # only at zero because d is square-free.
        norm = self.rational**2 - self.radical**2 * self.radicand
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        return QuadraticNumber(
            self.rational / norm, -self.radical / norm, self.radicand
        )

    def sign(self) -> int:
        """Exact sign of the real value (-1, 0, or +1)."""
        a, b = self.rational, self.radical
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lead = 1 if a > 0 else -1
        diff = a**2 - b**2 * self.radicand
        if diff == 0:
            return 0
        return lead if diff > 0 else -lead

    def evalf(self, digits: int = DEFAULT_DIGITS) -> mpf:
        """Value as an mpf with relative error below ``10**(-digits + 2)``."""
        if digits < DEFAULT_DIGITS:
            raise ValueError(f"precision must be at least {DEFAULT_DIGITS} digits")
        with working_dps(digits):
            value = fraction_to_mpf(self.rational)
            if self.radical:
                value += fraction_to_mpf(self.radical) * mpmath.sqrt(self.radicand)
            return +value

    def __str__(self) -> str:
        if self.radical == 0:
            return str(self.rational)
        radical = f"sqrt({self.radicand})"
        if abs(self.radical) != 1:
            radical = f"{abs(self.radical)}*{radical}"
        sign = "-" if self.radical < 0 else "+"
        if self.rational == 0:
            return radical if sign == "+" else f"-{radical}"
        return f"{self.rational}{sign}{radical}"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.rational!r}, {self.radical!r}, {self.radicand})"


ZERO = QuadraticNumber()
ONE = QuadraticNumber.from_rational(1)


def sqrt_rational(value: RationalLike) -> QuadraticNumber:
    """Exact square root of a nonnegative rational as a QuadraticNumber."""
    q = Fraction(value)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return ZERO
    s, d = squarefree_decompose(q.numerator * q.denominator)
    return QuadraticNumber(Fraction(0), Fraction(s, q.denominator), d)
