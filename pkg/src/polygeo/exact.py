"""Exact arithmetic over quadratic irrationals and rationals.

A value is represented as ``(a + b*sqrt(d)) / c`` with arbitrary-precision
integers ``a, b, c > 0`` and a square-free radicand ``d``.  All arithmetic and
all comparisons are exact: signs are decided by integer inequalities, never by
floating point.  Rational plumbing values are plain ``fractions.Fraction``
objects, or quadratic irrationals with ``b == 0``.

Decimal output is rendering only and never feeds back into computation.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import BadArgs, MixedRadicand

#: Rational plumbing type used throughout the package.
Rational = Fraction

NumberLike = Union[int, Fraction, "QuadraticIrrational"]

#: Scale, in bits, of the exact integer keys ``floor(x * 2**SCALE_BITS)`` used
#: to accelerate sorting and counting.  Keys are exact floors (not rounded
#: approximations); key collisions are resolved by exact comparison.
SCALE_BITS = 128


class Ordering(enum.IntEnum):
    """Result of an exact three-way comparison."""

    LT = -1
    EQ = 0
    GT = 1


def _square_free(d: int) -> tuple[int, int]:
    """Split ``d == s*s*rest`` with ``rest`` square-free; return ``(s, rest)``."""
    s = 1
    p = 2
    while p * p <= d:
        pp = p * p
        while d % pp == 0:
            d //= pp
            s *= p
        p += 1 if p == 2 else 2
    return s, d


def floor_sqrt(b: int, d: int) -> int:
    """Exact ``floor(b * sqrt(d))`` for an integer multiple of a square root.

    Requires ``d`` square-free with ``d >= 2`` whenever ``b != 0``, so
    ``b*sqrt(d)`` is irrational and ``isqrt`` never lands on it exactly.
    """
    if b == 0:
        return 0
    r = isqrt(b * b * d)
    return r if b > 0 else -r - 1


class QuadraticIrrational:
    """Exact value ``(a + b*sqrt(d)) / c`` in canonical form.

    Canonical form: ``c > 0``, ``gcd(a, b, c) == 1``, ``d`` square-free with
    ``d >= 2``; rational values carry ``b == 0`` and ``d`` normalized to 2.
    Two values are equal iff their canonical tuples coincide.  Instances are
    immutable by convention and safe to share between threads; every
    operation returns a fresh canonical value.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 2) -> None:
        if c == 0:
            raise ValueError("zero denominator")
        if c < 0:
            a, b, c = -a, -b, -c
        if b != 0:
            if d <= 0:
                raise ValueError(f"radicand must be positive, got {d}")
            s, d = _square_free(d)
            b *= s
            if d == 1:
                a += b
                b = 0
        if b == 0:
            d = 2
        g = gcd(gcd(abs(a), abs(b)), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, value: int) -> "QuadraticIrrational":
        return cls(value, 0, 1, 2)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "QuadraticIrrational":
        return cls(value.numerator, 0, value.denominator, 2)

    @classmethod
    def coerce(cls, value: NumberLike) -> "QuadraticIrrational":
        if isinstance(value, QuadraticIrrational):
            return value
        if isinstance(value, int):
            return cls.from_int(value)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        raise TypeError(f"cannot interpret {value!r} as an exact value")

    # -- predicates --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        """Exact sign of the value, decided by integer comparisons only."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare |a| against |b|*sqrt(d) via squares
        lhs, rhs = a * a, b * b * d
        if a > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    # -- arithmetic ---------------------------------------------------------

    def _common_d(self, other: "QuadraticIrrational") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise MixedRadicand(f"sqrt({self.d}) vs sqrt({other.d})")
        return self.d

    def __add__(self, other: NumberLike) -> "QuadraticIrrational":
        try:
            o = QuadraticIrrational.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(o)
        return QuadraticIrrational(
            self.a * o.c + o.a * self.c,
            self.b * o.c + o.b * self.c,
            self.c * o.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self) -> "QuadraticIrrational":
        return QuadraticIrrational(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other: NumberLike) -> "QuadraticIrrational":
        try:
            o = QuadraticIrrational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: NumberLike) -> "QuadraticIrrational":
        return (-self) + other

    def __mul__(self, other: NumberLike) -> "QuadraticIrrational":
        try:
            o = QuadraticIrrational.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(o)
        return QuadraticIrrational(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticIrrational":
        if self.sign() == 0:
            raise ZeroDivisionError("inverse of zero")
        norm = self.a * self.a - self.b * self.b * self.d
        return QuadraticIrrational(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other: NumberLike) -> "QuadraticIrrational":
        try:
            o = QuadraticIrrational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: NumberLike) -> "QuadraticIrrational":
        return QuadraticIrrational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QuadraticIrrational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = QuadraticIrrational.from_int(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __abs__(self) -> "QuadraticIrrational":
        return -self if self.sign() < 0 else self

    # -- order --------------------------------------------------------------

    def _cmp(self, other: NumberLike) -> Ordering:
        o = QuadraticIrrational.coerce(other)
        return Ordering((self - o).sign())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadraticIrrational.coerce(other)
        if not isinstance(other, QuadraticIrrational):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __lt__(self, other: NumberLike) -> bool:
        return self._cmp(other) is Ordering.LT

    def __le__(self, other: NumberLike) -> bool:
        return self._cmp(other) is not Ordering.GT

    def __gt__(self, other: NumberLike) -> bool:
        return self._cmp(other) is Ordering.GT

    def __ge__(self, other: NumberLike) -> bool:
        return self._cmp(other) is not Ordering.LT

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self) -> bool:
        return self.sign() != 0

    # -- integer parts -------------------------------------------------------

    def floor(self) -> int:
        """Exact floor.

        With ``t = floor(b*sqrt(d))`` the value lies in
        ``[(a+t)/c, (a+t+1)/c)``, an interval of length ``1/c <= 1``, so
        ``(a+t)//c`` is the unique integer in ``(x-1, x]``.
        """
        return (self.a + floor_sqrt(self.b, self.d)) // self.c

    def frac(self) -> "QuadraticIrrational":
        """Fractional part, exactly in ``[0, 1)``."""
        return self - self.floor()

    def scaled_floor(self, bits: int) -> int:
        """Exact ``floor(x * 2**bits)``; the integer key used for sorting."""
        return ((self.a << bits) + floor_sqrt(self.b << bits, self.d)) // self.c

    def __float__(self) -> float:
        return float(Fraction(self.scaled_floor(64), 1 << 64))

    # -- rendering -----------------------------------------------------------

    def decimal(self, digits: int = 40) -> str:
        """Fixed-point decimal, truncated toward zero.

        Inexact renderings (any irrational, or a rational with a longer
        expansion) are flagged with a trailing ``~``.
        """
        neg = self.sign() < 0
        v = -self if neg else self
        scale = 10 ** digits
        scaled = (v * scale).floor()
        ip, fp = divmod(scaled, scale)
        if self.b == 0:
            exact = (Fraction(self.a, self.c) * scale).denominator == 1
        else:
            exact = False
        text = f"{'-' if neg else ''}{ip}.{fp:0{digits}d}"
        return text if exact else text + "~"

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return f"{self.a}/{self.c}" if self.c != 1 else str(self.a)
        return f"({self.a}{self.b:+}*sqrt({self.d}))/{self.c}"


def square_root(d: int) -> QuadraticIrrational:
    """Exact ``sqrt(d)`` for a positive integer ``d``."""
    return QuadraticIrrational(0, 1, 1, d)


def compare(x: NumberLike, y: NumberLike) -> Ordering:
    """Exact three-way comparison; raises MixedRadicand across fields."""
    return QuadraticIrrational.coerce(x)._cmp(y)


PHI = QuadraticIrrational(1, 1, 2, 5)
SQRT2 = square_root(2)
SQRT3 = square_root(3)

_NAMED = {"phi": PHI, "sqrt2": SQRT2, "sqrt3": SQRT3}


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal literal as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise BadArgs(f"not a rational: {text!r}") from exc


def parse_value(text: str) -> QuadraticIrrational:
    """Parse the textual value forms used by the CLI and config files.

    Accepted: named aliases ``phi``, ``sqrt2``, ``sqrt3``; the generic
    ``quad:a,b,c,d`` form; and rationals ``p/q``.
    """
    text = text.strip()
    if text in _NAMED:
        return _NAMED[text]
    if text.startswith("quad:"):
        parts = text[len("quad:"):].split(",")
        if len(parts) != 4:
            raise BadArgs(f"quad form needs four integers: {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError as exc:
            raise BadArgs(f"quad form needs four integers: {text!r}") from exc
        try:
            return QuadraticIrrational(a, b, c, d)
        except ValueError as exc:
            raise BadArgs(str(exc)) from exc
    return QuadraticIrrational.from_fraction(parse_rational(text))
