"""Independent oracles shared by the tests.

These deliberately avoid the library's own arithmetic paths: values are
recomputed with the stdlib ``decimal`` module at high precision, window
extremes by dense scanning, reachability by closure under the gluings and
their inverses.
"""

from decimal import Decimal, getcontext
from fractions import Fraction
from math import lcm


def decimal_value(x, digits=50) -> Decimal:
    """High-precision decimal value of (a + b*sqrt(d))/c."""
    getcontext().prec = digits + 15
    return (Decimal(x.a) + Decimal(x.b) * Decimal(x.d).sqrt()) / Decimal(x.c)


def decimal_sign(x, digits=50) -> int:
    v = decimal_value(x, digits)
    if abs(v) < Decimal(10) ** (-digits):
        return 0
    return 1 if v > 0 else -1


def dense_scan_extremes(points: list[Fraction], window: Fraction) -> tuple[int, int]:
    """Brute-force sliding-window extremes for rational inputs.

    Every breakpoint of the count lives on the 1/D grid spanned by the
    endpoints, so scanning starts at resolution 1/(2D) hits every constant
    piece of the count function on [0, 1-window].
    """
    dens = [p.denominator for p in points] + [window.denominator]
    scale = 2 * lcm(*dens)
    pts = sorted(int(p * scale) for p in points)
    win = int(window * scale)
    top = scale - win  # last admissible start, scaled
    lo_count = hi_count = None
    for start in range(0, top + 1):
        cnt = sum(1 for p in pts if start <= p < start + win)
        lo_count = cnt if lo_count is None else min(lo_count, cnt)
        hi_count = cnt if hi_count is None else max(hi_count, cnt)
    return lo_count, hi_count


def reachable_closure(b: int, right, top) -> set[int]:
    """Orbit of square 0 under the group generated by both gluings."""
    inv_right = [0] * b
    inv_top = [0] * b
    for i in range(b):
        inv_right[right[i]] = i
        inv_top[top[i]] = i
    seen = {0}
    changed = True
    while changed:
        changed = False
        for s in list(seen):
            for t in (right[s], top[s], inv_right[s], inv_top[s]):
                if t not in seen:
                    seen.add(t)
                    changed = True
    return seen


def decimal_flow_edges(surface, alpha, y0: Fraction, n: int, digits=50) -> list[int]:
    """Edge sequence of the first n right-edge crossings, simulated in Decimal."""
    getcontext().prec = digits + 15
    alpha_d = decimal_value(alpha, digits)
    x = Decimal(0)
    y = Decimal(y0.numerator) / Decimal(y0.denominator)
    square = 0
    edges = []
    while len(edges) < n:
        rise = alpha_d * (1 - x)
        room = 1 - y
        assert abs(rise - room) > Decimal(10) ** (-digits + 5), "oracle hit a near-corner"
        if rise < room:
            y = y + rise
            x = Decimal(0)
            square = surface.right[square]
            edges.append(square)
        else:
            x = x + room / alpha_d
            y = Decimal(0)
            square = surface.top[square]
    return edges
