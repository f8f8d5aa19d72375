"""Continued fractions of quadratic irrationals and Ostrowski numeration.

Expansion works on the exact complete-quotient state ``(P + sqrt(D)) / Q``,
so the (eventual) period is detected by exact state repetition, never by
digit-pattern heuristics.

Indexing convention: convergents are stored from ``m = 0`` with ``q_0 = 1``
(and ``p_0 = a_0``), so the Ostrowski digit ``b_i`` multiplies ``q_i`` with
the same index 0 base.  The digit bound ``A`` is the maximum over digits
``a_i`` with ``i >= 1``; the leading digit ``a_0`` does not count toward it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .errors import PeriodNotFound, PreconditionNotMet
from .exact import QuadraticIrrational


@dataclass(frozen=True)
class Convergent:
    """One convergent ``p/q`` with its index ``m``."""

    m: int
    p: int
    q: int


@dataclass(frozen=True)
class OstrowskiDigits:
    """Digit vector ``b_0..b_n`` of ``value`` in the ``q_i`` numeration."""

    value: int
    digits: tuple[int, ...]


class ContinuedFraction:
    """Eventually periodic continued fraction ``[a_0; a_1, a_2, ...]``.

    ``preperiod`` holds the leading digits (``a_0`` may be zero), ``period``
    the repeating block; ``digit_bound`` is the maximum digit over all
    indices ``i >= 1``.
    """

    __slots__ = ("preperiod", "period", "digit_bound")

    def __init__(self, preperiod: list[int], period: list[int]) -> None:
        if not period:
            raise ValueError("period must be nonempty")
        if not preperiod:
            raise ValueError("preperiod must contain at least a_0")
        tail = list(preperiod[1:]) + list(period)
        if any(a < 1 for a in tail):
            raise ValueError("digits a_i with i >= 1 must be positive")
        if preperiod[0] < 0:
            raise ValueError("a_0 must be nonnegative")
        self.preperiod = tuple(preperiod)
        self.period = tuple(period)
        self.digit_bound = max(tail)

    def digit(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(count)]

    def convergents(self, count: int) -> list[Convergent]:
        """First ``count`` convergents via the standard recurrence."""
        if count < 1:
            raise PreconditionNotMet("count must be >= 1")
        out: list[Convergent] = []
        p_prev, q_prev = 1, 0
        p_cur, q_cur = self.digit(0), 1
        out.append(Convergent(0, p_cur, q_cur))
        for m in range(1, count):
            a = self.digit(m)
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
            out.append(Convergent(m, p_cur, q_cur))
        return out

    def denominators(self, count: int) -> list[int]:
        return [cv.q for cv in self.convergents(count)]

    def _denominator_stream(self) -> Iterator[int]:
        q_prev, q_cur = 0, 1
        m = 0
        while True:
            yield q_cur
            m += 1
            q_cur, q_prev = self.digit(m) * q_cur + q_prev, q_cur

    def __repr__(self) -> str:
        return f"ContinuedFraction({list(self.preperiod)}, {list(self.period)})"


def expand(alpha: QuadraticIrrational, max_digits: int = 1024) -> ContinuedFraction:
    """Continued fraction of a positive quadratic irrational.

    Iterates the complete quotient ``(P + sqrt(D)) / Q`` with integer state;
    the expansion is periodic exactly when a state repeats.  Raises
    PeriodNotFound if no repetition shows up within ``max_digits`` digits,
    which for a true quadratic irrational signals a bug.
    """
    if alpha.is_rational:
        raise PreconditionNotMet("alpha must be irrational")
    if alpha.sign() <= 0:
        raise PreconditionNotMet("alpha must be positive")

    if alpha.b > 0:
        p_state, q_state = alpha.a, alpha.c
    else:
        p_state, q_state = -alpha.a, -alpha.c
    big_d = alpha.b * alpha.b * alpha.d
    if (big_d - p_state * p_state) % q_state != 0:
        scale = abs(q_state)
        p_state *= scale
        big_d *= scale * scale
        q_state *= scale

    root = isqrt(big_d)
    digits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for i in range(max_digits):
        state = (p_state, q_state)
        if state in seen:
            start = seen[state]
            if start == 0:
                # purely periodic: keep a_0 in the preperiod, rotate the block
                return ContinuedFraction(digits[:1], digits[1:] + digits[:1])
            return ContinuedFraction(digits[:start], digits[start:])
        seen[state] = i
        if q_state > 0:
            a = (p_state + root) // q_state
        else:
            a = (-p_state - root - 1) // (-q_state)
        digits.append(a)
        p_state = a * q_state - p_state
        q_state = (big_d - p_state * p_state) // q_state
    raise PeriodNotFound(f"no period within {max_digits} digits")


def approximation_gap(
    alpha: QuadraticIrrational, m: int, cf: ContinuedFraction | None = None
) -> QuadraticIrrational:
    """Exact ``|alpha - p_m/q_m|``.

    Callers assert the classical bound ``gap < 1/(q_m * q_{m+1})``; the gap
    itself is returned so tests can check it in exact arithmetic.
    """
    if m < 1:
        raise PreconditionNotMet("m must be >= 1")
    cf = cf if cf is not None else expand(alpha)
    cv = cf.convergents(m + 1)[m]
    return abs(alpha - Fraction(cv.p, cv.q))


def ostrowski_decompose(value: int, cf: ContinuedFraction) -> OstrowskiDigits:
    """Greedy digit vector of ``value`` over the convergent denominators.

    Greedy (largest ``q_i`` first) satisfies all digit constraints: the
    remainder after taking ``b_i = floor(rem / q_i)`` is below ``q_i``, and
    when ``b_i`` saturates at ``a_{i+1}`` the remainder drops below
    ``q_{i-1}``, forcing ``b_{i-1} = 0``.
    """
    if value < 1:
        raise PreconditionNotMet("value must be >= 1")
    qs: list[int] = []
    for q in cf._denominator_stream():
        qs.append(q)
        if q > value:
            break
    # qs[n] <= value < qs[n+1]
    n = len(qs) - 2
    digits = [0] * (n + 1)
    rem = value
    for i in range(n, -1, -1):
        digits[i], rem = divmod(rem, qs[i])
    assert rem == 0
    return OstrowskiDigits(value, tuple(digits))


def ostrowski_validate(dig: OstrowskiDigits, cf: ContinuedFraction) -> bool:
    """True iff the digit vector satisfies every numeration constraint.

    Checks the digit ranges, the carry rule (``b_{i-1} = 0`` whenever
    ``b_i = a_{i+1}``), the reconstruction ``sum b_i q_i == value``, and for
    positive values that the digit length matches ``q_n <= value < q_{n+1}``.
    The all-zero vector is the valid representation of 0.
    """
    digits = dig.digits
    if not digits:
        return dig.value == 0
    n = len(digits) - 1
    qs = cf.denominators(n + 2)
    if digits[0] not in range(cf.digit(1)):
        return False
    for i in range(1, n + 1):
        if digits[i] < 0 or digits[i] > cf.digit(i + 1):
            return False
        if digits[i] == cf.digit(i + 1) and digits[i - 1] != 0:
            return False
    if sum(b * q for b, q in zip(digits, qs)) != dig.value:
        return False
    if dig.value == 0:
        return all(b == 0 for b in digits)
    return qs[n] <= dig.value < qs[n + 1]
