"""Visiting-number analytics over microscopic window families.

Windows are half-open ``[a, a+L)`` and live inside a single vertical edge,
treated as the segment ``[0, 1]``: windows never wrap around the edge top.
Minima are evaluated "immediately after" each breakpoint with exact successor
logic (open-side counts), never with epsilon nudges.

Counting is exact but fast: each height carries an exact integer key
``floor(x * 2**SCALE_BITS)``; binary search runs on the keys and any key
collision falls back to an exact comparison.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence, Union

from .errors import NoThresholdBelowN, PreconditionNotMet
from .exact import SCALE_BITS, QuadraticIrrational

ExactValue = Union[int, Fraction, QuadraticIrrational]


def _key_of(value: ExactValue) -> int:
    if isinstance(value, QuadraticIrrational):
        return value.scaled_floor(SCALE_BITS)
    if isinstance(value, Fraction):
        return (value.numerator << SCALE_BITS) // value.denominator
    if isinstance(value, int):
        return value << SCALE_BITS
    raise TypeError(f"not an exact value: {value!r}")


def _cmp(u: ExactValue, v: ExactValue) -> int:
    if isinstance(u, (int, Fraction)) and isinstance(v, (int, Fraction)):
        return (u > v) - (u < v)
    return int(QuadraticIrrational.coerce(u)._cmp(v))


class EdgeHeights:
    """Sorted distinct exact heights on one edge, with integer sort keys."""

    __slots__ = ("points", "keys")

    def __init__(self, points: list, keys: list[int]) -> None:
        self.points = points
        self.keys = keys

    @classmethod
    def build(cls, values: Sequence[ExactValue], keys: Sequence[int] | None = None) -> "EdgeHeights":
        values = list(values)
        keys = [_key_of(v) for v in values] if keys is None else list(keys)
        order = sorted(range(len(values)), key=keys.__getitem__)
        # exact order inside equal-key runs (values within 2**-SCALE_BITS)
        i = 0
        while i < len(order):
            j = i + 1
            while j < len(order) and keys[order[j]] == keys[order[i]]:
                j += 1
            if j - i > 1:
                order[i:j] = sorted(
                    order[i:j], key=cmp_to_key(lambda u, v: _cmp(values[u], values[v]))
                )
            i = j
        return cls([values[i] for i in order], [keys[i] for i in order])

    def __len__(self) -> int:
        return len(self.points)

    def _counts(self, bound: ExactValue) -> tuple[int, int]:
        """(#points < bound, #points <= bound) with exact tie resolution."""
        kb = _key_of(bound)
        below = bisect_left(self.keys, kb)
        m = len(self.keys)
        while below < m and self.keys[below] == kb and _cmp(self.points[below], bound) < 0:
            below += 1
        le = below
        while le < m and self.keys[le] == kb and _cmp(self.points[le], bound) == 0:
            le += 1
        return below, le

    def count_below(self, bound: ExactValue) -> int:
        return self._counts(bound)[0]

    def count_le(self, bound: ExactValue) -> int:
        return self._counts(bound)[1]

    def count_in(
        self,
        lo: ExactValue,
        hi: ExactValue,
        include_lo: bool = True,
        include_hi: bool = False,
    ) -> int:
        upper = self.count_le(hi) if include_hi else self.count_below(hi)
        lower = self.count_below(lo) if include_lo else self.count_le(lo)
        return max(0, upper - lower)


@dataclass(frozen=True)
class WindowWitness:
    """Window start achieving an extreme count.

    ``closed`` means the window ``[position, position+L)`` itself attains the
    count; otherwise every start immediately after ``position`` does (the
    piecewise-constant count was evaluated on the open side).
    """

    position: ExactValue
    closed: bool


@dataclass(frozen=True)
class WindowExtremes:
    count_min: int
    count_max: int
    witness_min: WindowWitness | None
    witness_max: WindowWitness | None


def visiting_extremes(
    heights: Union[EdgeHeights, Sequence[ExactValue]], window: Fraction
) -> WindowExtremes:
    """Exact min and max of ``|[a, a+L) ∩ points|`` over ``a in [0, 1-L]``.

    The count is piecewise constant in ``a``; it is evaluated at every
    breakpoint (each point, plus the two boundary starts 0 and ``1-L``) and
    immediately after each point.  A two-pointer/bisection sweep over the
    sorted heights makes this O(m log m).
    """
    if not isinstance(heights, EdgeHeights):
        heights = EdgeHeights.build(heights)
    if not 0 < window <= 1:
        raise PreconditionNotMet(f"window length must be in (0, 1], got {window}")
    m = len(heights)
    if m == 0:
        return WindowExtremes(0, 0, None, None)
    if window == 1:
        wit = WindowWitness(Fraction(0), True)
        return WindowExtremes(m, m, wit, wit)

    one_minus = 1 - window
    points = heights.points

    # boundary start a = 0
    start_count = heights.count_below(window)
    best_max, wit_max = start_count, WindowWitness(Fraction(0), True)
    best_min, wit_min = start_count, WindowWitness(Fraction(0), True)
    # boundary start a = 1 - L
    end_count = m - heights.count_below(one_minus)
    if end_count > best_max:
        best_max, wit_max = end_count, WindowWitness(one_minus, True)
    if end_count < best_min:
        best_min, wit_min = end_count, WindowWitness(one_minus, True)

    usable_lt, usable_le = heights._counts(one_minus)  # starts a = points[i]
    for i in range(usable_le):
        upper = points[i] + window
        below, le = heights._counts(upper)
        cand_max = below - i
        if cand_max > best_max:
            best_max, wit_max = cand_max, WindowWitness(points[i], True)
        if i < usable_lt:
            cand_min = le - (i + 1)
            if cand_min < best_min:
                best_min, wit_min = cand_min, WindowWitness(points[i], False)
    return WindowExtremes(best_min, best_max, wit_min, wit_max)


@dataclass(frozen=True)
class IntervalFamilySpec:
    """The family of windows of length ``C/n`` on every vertical edge."""

    n: int
    C: Fraction

    def __post_init__(self) -> None:
        if not 1 < self.C < self.n:
            raise PreconditionNotMet(f"need 1 < C < n, got C={self.C}, n={self.n}")

    @property
    def length(self) -> Fraction:
        return self.C / self.n


@dataclass(frozen=True)
class EdgeWindow:
    edge: int
    position: ExactValue
    closed: bool


@dataclass(frozen=True)
class UniformityReport:
    """Window-count extremes for one family, with witnesses.

    ``expected`` is the per-window expectation ``C/b``; the sandwich
    ``min <= C/b <= max`` holds for every report produced here.
    """

    spec: IntervalFamilySpec
    b: int
    min_visits: int
    max_visits: int
    min_witness: EdgeWindow
    max_witness: EdgeWindow
    expected: Fraction

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.min_visits, self.max_visits)


class CaseLabel:
    A = "A"
    B = "B"


def _check_eps(eps: Fraction, upper: Fraction = Fraction(1, 2)) -> Fraction:
    if isinstance(eps, float):
        raise TypeError("eps must be an exact Fraction, not float")
    eps = Fraction(eps)
    if not 0 < eps < upper:
        raise PreconditionNotMet(f"need 0 < eps < {upper}, got {eps}")
    return eps


def _edge_map(crossings) -> dict[int, EdgeHeights]:
    return crossings.per_edge_heights()


def family_extremes(crossings, C: Fraction, threads: int = 1) -> UniformityReport:
    """Window-count extremes of length ``C/n`` over all edges of a crossing set.

    Reports are cached on the crossing set (keyed by ``C``) since repeated
    checks at one scale are the common access pattern.
    """
    C = Fraction(C)
    cache = getattr(crossings, "_family_cache", None)
    if cache is not None and C in cache:
        return cache[C]
    spec = IntervalFamilySpec(crossings.n, Fraction(C))
    edges = _edge_map(crossings)
    b = len(edges)
    length = spec.length

    def one(item: tuple[int, EdgeHeights]) -> tuple[int, WindowExtremes]:
        edge, heights = item
        return edge, visiting_extremes(heights, length)

    items = sorted(edges.items())
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(it) for it in items]

    min_edge, min_ext = min(results, key=lambda r: r[1].count_min)
    max_edge, max_ext = max(results, key=lambda r: r[1].count_max)
    expected = spec.C / b
    report = UniformityReport(
        spec=spec,
        b=b,
        min_visits=min_ext.count_min,
        max_visits=max_ext.count_max,
        min_witness=EdgeWindow(min_edge, min_ext.witness_min.position, min_ext.witness_min.closed),
        max_witness=EdgeWindow(max_edge, max_ext.witness_max.position, max_ext.witness_max.closed),
        expected=expected,
    )
    assert report.min_visits <= expected <= report.max_visits, (
        f"min/expected/max sandwich violated: {report.min_visits} / {expected} / {report.max_visits}"
    )
    if cache is not None:
        cache[C] = report
    return report


def classify_case(report: UniformityReport, eps: Fraction) -> str:
    """Label ``A`` when ``min/max >= 1 - eps``, else ``B``."""
    eps = _check_eps(eps)
    if report.max_visits == 0:
        return CaseLabel.B
    if report.min_visits >= (1 - eps) * report.max_visits:
        return CaseLabel.A
    return CaseLabel.B


def ladder_lengths(C: Fraction, n: int) -> list[Fraction]:
    """Doubling ladder ``C/n, 2C/n, 4C/n, ...`` capped at the full edge."""
    length = Fraction(C) / n
    out = [min(length, Fraction(1))]
    while out[-1] < 1:
        out.append(min(2 * out[-1], Fraction(1)))
    return out


def window_check(
    edges: Sequence[EdgeHeights], n: int, b: int, C: Fraction, eps: Fraction, threads: int = 1
) -> bool:
    """Uniformity certificate at base scale ``C``.

    At every ladder scale ``L`` the global extremes must satisfy both the
    relative error bound ``|V - nL/b| < eps*nL/b`` and the min/max ratio
    condition ``min >= (1-eps)*max``, so a certified scale stays certified
    at all doublings up to the full edge.
    """
    for length in ladder_lengths(C, n):
        def one(heights: EdgeHeights) -> WindowExtremes:
            return visiting_extremes(heights, length)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                exts = list(pool.map(one, edges))
        else:
            exts = [one(h) for h in edges]
        gmin = min(e.count_min for e in exts)
        gmax = max(e.count_max for e in exts)
        expected = Fraction(n) * length / b
        if not (gmin > (1 - eps) * expected and gmax < (1 + eps) * expected):
            return False
        if gmin < (1 - eps) * gmax:
            return False
    return True


@dataclass(frozen=True)
class ThresholdBracket:
    """Certified bisection bracket for the smallest passing window scale.

    ``c_hi`` passed the check (certified); ``c_lo`` failed it whenever
    ``lo_checked`` is true, otherwise it is the untested lower search bound.
    """

    n: int
    b: int
    eps: Fraction
    c_lo: Fraction
    c_hi: Fraction
    lo_checked: bool
    probes: tuple[tuple[Fraction, bool], ...]

    @property
    def c_star(self) -> Fraction:
        return self.c_hi

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "eps": str(self.eps),
            "C_lo": str(self.c_lo),
            "C_hi": str(self.c_hi),
            "C_lo_float": float(self.c_lo),
            "C_hi_float": float(self.c_hi),
            "lo_checked": self.lo_checked,
            "probes": [[str(c), ok] for c, ok in self.probes],
        }


def threshold_search(
    edges: Sequence[EdgeHeights],
    n: int,
    b: int,
    eps: Fraction,
    rel_tol: Fraction = Fraction(21, 20),
    threads: int = 1,
) -> ThresholdBracket:
    """Bisect for the smallest scale ``C`` passing :func:`window_check`.

    Runs on a log scale until ``c_hi/c_lo <= rel_tol`` and returns the
    certified bracket rather than a point estimate.  Raises
    NoThresholdBelowN when even the top scale ``C = n`` fails, which
    signals a bug or a pathological input.
    """
    eps = _check_eps(eps, upper=Fraction(1))
    if n < 2:
        raise PreconditionNotMet("n must be >= 2")
    probes: list[tuple[Fraction, bool]] = []

    def check(C: Fraction) -> bool:
        ok = window_check(edges, n, b, C, eps, threads=threads)
        probes.append((C, ok))
        return ok

    lo, hi = Fraction(1), Fraction(n)
    if not check(hi):
        raise NoThresholdBelowN(f"window check fails even at C = n = {n}")
    lo_checked = False
    while hi > lo * rel_tol:
        mid = Fraction(math.sqrt(lo * hi)).limit_denominator(1 << 24)
        if not lo < mid < hi:
            mid = (lo + hi) / 2
        if check(mid):
            hi = mid
        else:
            lo = mid
            lo_checked = True
    return ThresholdBracket(
        n=n, b=b, eps=eps, c_lo=lo, c_hi=hi, lo_checked=lo_checked, probes=tuple(probes)
    )


def crossing_threshold(
    crossings,
    eps: Fraction,
    rel_tol: Fraction = Fraction(21, 20),
    threads: int = 1,
) -> ThresholdBracket:
    """Threshold search over the vertical-edge crossing set of a surface."""
    eps = _check_eps(eps)
    edges = [h for _, h in sorted(_edge_map(crossings).items())]
    return threshold_search(edges, crossings.n, len(edges), eps, rel_tol=rel_tol, threads=threads)


def coarse_window_check(
    crossings,
    C: Fraction,
    edge: int,
    lo: Fraction,
    hi: Fraction,
    eps: Fraction,
) -> bool:
    """Check that a long window's count is pinned by the scale-C maximum.

    For a window ``J = [lo, hi)`` on ``edge`` with ``|J| >= 3C/n`` and the
    ratio condition holding at scale ``C`` (label A), verifies

        ``(1-eps) * (|J|/L - 3) * Vmax  <=  V(J)  <=  (|J|/L + 3) * Vmax``

    where ``L = C/n`` and ``Vmax`` is the count of the maximal window of the
    scale-C family.  Raises PreconditionNotMet when the family is labelled B
    at scale ``C`` or the window is shorter than ``3C/n``.
    """
    eps = _check_eps(eps)
    C = Fraction(C)
    report = family_extremes(crossings, C)
    if classify_case(report, eps) != CaseLabel.A:
        raise PreconditionNotMet(f"ratio condition fails at scale C={C}")
    length = Fraction(hi) - Fraction(lo)
    spec_len = report.spec.length
    if length < 3 * spec_len:
        raise PreconditionNotMet(f"window too short: |J|={length} < 3C/n={3 * spec_len}")
    heights = _edge_map(crossings)[edge]
    count = heights.count_in(lo, hi, include_lo=True, include_hi=False)
    vmax = report.max_visits
    scale = length / spec_len
    lower = (1 - eps) * (scale - 3) * vmax
    upper = (scale + 3) * vmax
    return lower <= count <= upper
