"""Irrational rotation orbits and their visiting-number checks.

The orbit builder runs on a raw integer state ``(U + V*sqrt(d)) / M`` so a
100k-point prefix costs one exact integer square root per point; the exact
values and their sort keys are materialized together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import uniformity
from .cfrac import ContinuedFraction, expand
from .errors import PreconditionNotMet
from .exact import SCALE_BITS, NumberLike, QuadraticIrrational, floor_sqrt
from .uniformity import EdgeHeights, ThresholdBracket, WindowWitness


@dataclass(frozen=True)
class UnitInterval:
    """Half-open subinterval ``[lower, upper)`` of ``[0, 1)``."""

    lower: NumberLike
    upper: NumberLike

    def __post_init__(self) -> None:
        lo = QuadraticIrrational.coerce(self.lower)
        hi = QuadraticIrrational.coerce(self.upper)
        if lo.sign() < 0 or hi > 1 or not lo < hi:
            raise PreconditionNotMet(f"need 0 <= lower < upper <= 1, got [{lo}, {hi})")

    @property
    def length(self) -> QuadraticIrrational:
        return QuadraticIrrational.coerce(self.upper) - self.lower


class OrbitPrefix:
    """Exact fractional parts ``{offset + k*alpha}`` for ``k = 1..n``."""

    __slots__ = ("alpha", "n", "offset", "points", "_keys", "_heights")

    def __init__(self, alpha, n, offset, points, keys):
        self.alpha = alpha
        self.n = n
        self.offset = offset
        self.points = points
        self._keys = keys
        self._heights: EdgeHeights | None = None

    def heights(self) -> EdgeHeights:
        if self._heights is None:
            self._heights = EdgeHeights.build(self.points, self._keys)
        return self._heights


def orbit(alpha: QuadraticIrrational, n: int, offset: Fraction = Fraction(0)) -> OrbitPrefix:
    """Exact orbit prefix; all points are distinct since alpha is irrational."""
    if alpha.is_rational:
        raise PreconditionNotMet("alpha must be irrational")
    if n < 1:
        raise PreconditionNotMet("n must be >= 1")
    offset = Fraction(offset)
    if not 0 <= offset < 1:
        raise PreconditionNotMet("offset must lie in [0, 1)")
    a, b, c, d = alpha.a, alpha.b, alpha.c, alpha.d
    p, q = offset.numerator, offset.denominator
    m_den = c * q
    du, dv = a * q, b * q
    u, v = p * c, 0
    points: list[QuadraticIrrational] = []
    keys: list[int] = []
    for _ in range(n):
        u += du
        v += dv
        f = (u + floor_sqrt(v, d)) // m_den
        if f:
            u -= f * m_den
        points.append(QuadraticIrrational(u, v, m_den, d))
        keys.append(((u << SCALE_BITS) + floor_sqrt(v << SCALE_BITS, d)) // m_den)
    return OrbitPrefix(alpha, n, offset, points, keys)


def visiting_number(prefix: OrbitPrefix, interval: UnitInterval) -> int:
    """Count of orbit points in a half-open interval."""
    return prefix.heights().count_in(interval.lower, interval.upper)


def trivial_error_witness(prefix: OrbitPrefix) -> tuple[UnitInterval, Fraction]:
    """A window of length ``1/(2n)`` whose count misses its expectation by >= 1/2.

    The expected count at this scale is exactly 1/2 while any actual count is
    an integer, so every window qualifies; the one returned holds the maximal
    count, giving deviation ``V_max - 1/2``.
    """
    if prefix.n < 2:
        raise PreconditionNotMet("n must be >= 2")
    window = Fraction(1, 2 * prefix.n)
    ext = uniformity.visiting_extremes(prefix.heights(), window)
    witness: WindowWitness = ext.witness_max
    interval = UnitInterval(witness.position, QuadraticIrrational.coerce(witness.position) + window)
    deviation = Fraction(ext.count_max) - Fraction(1, 2)
    return interval, deviation


def orbit_threshold(
    alpha: QuadraticIrrational,
    n: int,
    eps: Fraction,
    offset: Fraction = Fraction(0),
    rel_tol: Fraction = Fraction(21, 20),
    threads: int = 1,
) -> ThresholdBracket:
    """Smallest window scale ``C`` (certified bracket, x1.05) such that every
    window of every ladder length ``2^j C/n`` counts within relative error
    ``eps`` of ``n*L`` and the min/max ratio stays above ``1 - eps``."""
    prefix = orbit(alpha, n, offset)
    return uniformity.threshold_search(
        [prefix.heights()], n, 1, eps, rel_tol=rel_tol, threads=threads
    )


def residue_index(
    alpha: QuadraticIrrational, h: int, k: int, cf: ContinuedFraction | None = None
) -> int:
    """Index ``(k * p_h) mod q_h`` of the grid point nearest ``{k*alpha}``.

    Since ``gcd(p_h, q_h) = 1`` the map ``k -> residue`` is a bijection of
    ``{1..q_h}`` onto ``{0..q_h-1}``.
    """
    cf = cf if cf is not None else expand(alpha)
    cv = cf.convergents(h + 1)[h]
    if not 1 <= k <= cv.q:
        raise PreconditionNotMet(f"need 1 <= k <= q_h = {cv.q}")
    return (k * cv.p) % cv.q


@lru_cache(maxsize=3)
def _backward_orbit(alpha: QuadraticIrrational, h: int) -> tuple[int, OrbitPrefix]:
    """Sorted heights ``{-k*alpha}`` for ``k = 1..q_h`` (cached per (alpha, h))."""
    cf = expand(alpha)
    q_h = cf.convergents(h + 1)[h].q
    prefix = orbit(-alpha, q_h)
    prefix.heights()
    return q_h, prefix


def integer_hit_count(
    alpha: QuadraticIrrational,
    h: int,
    lo: Fraction,
    hi: Fraction,
    cf: ContinuedFraction | None = None,
) -> int:
    """Number of pairs ``(beta, k)`` with ``beta + k*alpha`` integral.

    ``beta`` ranges over the closed interval ``[lo, hi]`` and ``k`` over
    ``1..q_h``.  For each ``k`` the admissible ``beta`` are the integer
    translates of ``{-k*alpha}``, so the count follows by enumerating those
    fractional parts and intersecting with the interval.
    """
    if h < 1:
        raise PreconditionNotMet("h must be >= 1")
    lo, hi = Fraction(lo), Fraction(hi)
    if hi < lo:
        raise PreconditionNotMet("empty interval")
    q_h, backward = _backward_orbit(alpha, h)
    length = hi - lo
    if length < 1:
        heights = backward.heights()
        shift = lo - (lo.numerator // lo.denominator)  # frac(lo)
        top = shift + length
        if top <= 1:
            return heights.count_in(shift, top, include_lo=True, include_hi=True)
        return heights.count_in(shift, 1, include_lo=True, include_hi=True) + heights.count_in(
            0, top - 1, include_lo=True, include_hi=True
        )
    # long intervals: count integer translates point by point
    total = 0
    for beta in backward.points:
        hi_floor = (hi - beta).floor()
        lo_ceil = -((beta - lo).floor())
        total += max(0, hi_floor - lo_ceil + 1)
    return total
