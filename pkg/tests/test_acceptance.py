"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.  Heavy traces are shared through module-scoped fixtures.
Criterion 8 is implemented faithfully and is expected to fail on the
torus/golden-ratio cell; see the repository notes for the counterexample.
"""

import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from polygeo.cfrac import approximation_gap, expand, ostrowski_decompose, ostrowski_validate
from polygeo.exact import PHI, SQRT2, SQRT3
from polygeo.flow import coverage_radius_estimate, trace_crossings
from polygeo.rotation import (
    integer_hit_count,
    orbit,
    orbit_threshold,
    trivial_error_witness,
    visiting_number,
)
from polygeo.surface import fixture
from polygeo.uniformity import CaseLabel, classify_case, coarse_window_check, crossing_threshold, family_extremes

GRID = 1 << 24
EPS = Fraction(1, 10)
HALF = Fraction(1, 2)
TORUS = fixture("torus")
L3 = fixture("L3")


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"criterion {number:2d}: FAIL — {description}")
        raise
    print(f"criterion {number:2d}: PASS — {description}")


def rand_lo(rng, room: Fraction) -> Fraction:
    return Fraction(rng.randint(0, int(room * GRID)), GRID)


@pytest.fixture(scope="module")
def traces():
    cache = {}

    def get(surface, alpha, n):
        key = (surface.squares, alpha, n)
        if key not in cache:
            cache[key] = trace_crossings(surface, alpha, HALF, n)
        return cache[key]

    return get


def test_criterion_01_convergent_gap():
    with criterion(1, "convergent gap < 1/(q_m q_{m+1}), exact, m <= 20"):
        for alpha in (PHI, SQRT2, SQRT3):
            cf = expand(alpha)
            qs = cf.denominators(22)
            for m in range(1, 21):
                assert approximation_gap(alpha, m, cf) < Fraction(1, qs[m] * qs[m + 1])


def test_criterion_02_ostrowski_round_trip():
    with criterion(2, "digit round trip, constraints, injectivity for N < q_12"):
        for alpha in (PHI, SQRT2):
            cf = expand(alpha)
            q12 = cf.denominators(13)[12]
            seen = set()
            for n in range(1, q12):
                dig = ostrowski_decompose(n, cf)
                assert ostrowski_validate(dig, cf)
                assert dig.digits not in seen
                seen.add(dig.digits)


def test_criterion_03_hit_count_bounds():
    with criterion(3, "hit count <= 3 at length 1/q_h and >= 1 at 3/q_h, h <= 15"):
        rng = random.Random(3)
        for alpha in (PHI, SQRT2, SQRT3):
            cf = expand(alpha)
            for h in range(1, 16):
                q_h = cf.denominators(h + 1)[h]
                short, long_ = Fraction(1, q_h), Fraction(3, q_h)
                for _ in range(1000):
                    lo = rand_lo(rng, 1 - short)
                    assert integer_hit_count(alpha, h, lo, lo + short) <= 3
                if long_ >= 1:
                    continue
                for _ in range(1000):
                    lo = rand_lo(rng, 1 - long_)
                    assert integer_hit_count(alpha, h, lo, lo + long_) >= 1


def test_criterion_04_trivial_error_witness():
    with criterion(4, "witness window of length 1/(2n) with deviation >= 1/2"):
        for n in (100, 1000, 10_000):
            prefix = orbit(PHI, n)
            interval, deviation = trivial_error_witness(prefix)
            assert deviation >= HALF
            assert interval.length == Fraction(1, 2 * n)
            count = visiting_number(prefix, interval)
            assert abs(Fraction(count) - HALF) == deviation


def test_criterion_05_rotation_threshold_stability():
    with criterion(5, "rotation threshold finite at n=1e4 and 1e5, same order"):
        b4 = orbit_threshold(PHI, 10**4, EPS)
        b5 = orbit_threshold(PHI, 10**5, EPS)
        assert 1 < b4.c_hi < 10**4
        assert 1 < b5.c_hi < 10**5
        ratio = b5.c_hi / b4.c_hi
        assert Fraction(1, 4) <= ratio <= 4


def test_criterion_06_torus_reduction(traces):
    with criterion(6, "torus heights equal {y0 + k*alpha} exactly, edges constant"):
        crossings = traces(TORUS, PHI, 10**4)
        for c in crossings.crossings:
            assert c.edge == 0
            assert c.height == (HALF + PHI * c.k).frac()


def test_criterion_07_l3_height_oracle(traces):
    with criterion(7, "L3 crossing heights equal the shifted rotation orbit"):
        crossings = traces(L3, PHI, 10**4)
        shifted = orbit(PHI, 10**4, offset=HALF)
        assert sorted(crossings.heights()) == sorted(shifted.points)


def test_criterion_08_scaled_count_bound(traces):
    with criterion(8, "per-edge counts within A*n*|I| + 1 on random intervals"):
        n = 10**5
        rng = random.Random(8)
        failures = []
        for surface in (TORUS, L3):
            for alpha in (PHI, SQRT2):
                digit_bound = expand(alpha).digit_bound
                crossings = traces(surface, alpha, n)
                violations = 0
                total = 0
                for edge, heights in sorted(crossings.per_edge_heights().items()):
                    for _ in range(1000):
                        lo_i = rng.randint(0, GRID - 2)
                        hi_i = rng.randint(lo_i + 1, GRID)
                        lo, hi = Fraction(lo_i, GRID), Fraction(hi_i, GRID)
                        total += 1
                        if heights.count_in(lo, hi) > digit_bound * n * (hi - lo) + 1:
                            violations += 1
                if violations:
                    failures.append(
                        f"squares={surface.squares} alpha={alpha} A={digit_bound}: "
                        f"{violations}/{total} intervals exceed the bound"
                    )
        assert not failures, "; ".join(failures)


def test_criterion_09_crossing_threshold(traces):
    with criterion(9, "L3 threshold bracket finite; label A at C_hi and 2*C_hi"):
        crossings = traces(L3, PHI, 10**5)
        bracket = crossing_threshold(crossings, EPS)
        assert 1 < bracket.c_hi < 10**5
        assert bracket.c_hi <= bracket.c_lo * Fraction(21, 20)
        assert classify_case(family_extremes(crossings, bracket.c_hi), EPS) == CaseLabel.A
        assert classify_case(family_extremes(crossings, 2 * bracket.c_hi), EPS) == CaseLabel.A
        test_criterion_09_crossing_threshold.bracket = bracket


def test_criterion_10_long_window_deviation(traces):
    with criterion(10, "windows of length 3C/(eps*n) within 3eps/(1-eps) relative error"):
        crossings = traces(L3, PHI, 10**5)
        bracket = getattr(test_criterion_09_crossing_threshold, "bracket", None)
        if bracket is None:
            bracket = crossing_threshold(crossings, EPS)
        n, b = 10**5, 3
        C = bracket.c_hi
        length = 3 * C / (EPS * n)
        assert length <= 1
        expected = Fraction(n) * length / b
        bound = 3 * EPS / (1 - EPS) * expected
        rng = random.Random(10)
        per_edge = crossings.per_edge_heights()
        for _ in range(1000):
            edge = rng.randrange(b)
            lo = rand_lo(rng, 1 - length)
            assert coarse_window_check(crossings, C, edge, lo, lo + length, EPS)
            count = per_edge[edge].count_in(lo, lo + length)
            assert abs(Fraction(count) - expected) <= bound


def test_criterion_11_extremes_oracle_equivalence():
    with criterion(11, "window extremes equal dense-scan brute force"):
        import itertools

        from polygeo.uniformity import visiting_extremes

        from oracles import dense_scan_extremes

        grid = [Fraction(i, 8) for i in range(8)]
        for size in (1, 2, 3):
            for pts in itertools.combinations(grid, size):
                for j in range(1, 9):
                    window = Fraction(j, 8)
                    ext = visiting_extremes(list(pts), window)
                    assert (ext.count_min, ext.count_max) == dense_scan_extremes(
                        list(pts), window
                    )
        rng = random.Random(11)
        for _ in range(10_000):
            size = rng.randint(0, 20)
            pts = [Fraction(i, 64) for i in rng.sample(range(64), size)]
            window = Fraction(rng.randint(1, 32), 32)
            ext = visiting_extremes(pts, window)
            assert (ext.count_min, ext.count_max) == dense_scan_extremes(pts, window)


def test_criterion_12_coverage_growth_bounded():
    with criterion(12, "coverage length per m stays within a bounded band"):
        for surface in (TORUS, L3):
            ratios = [
                coverage_radius_estimate(surface, PHI, m).arc_per_m
                for m in (1, 2, 4, 8, 16, 32)
            ]
            assert max(ratios) / min(ratios) < 10
