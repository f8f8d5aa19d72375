"""Event-driven exact tracing of a geodesic on a polysquare surface.

The tracer advances one edge event at a time, comparing the horizontal
distance to the right edge against the one implied by the rise to the top
edge in exact arithmetic.  A tie means the trajectory runs into a square
corner; with a rational starting height and an irrational slope this cannot
happen, so CornerHit signals an arithmetic bug.

Arc length is tracked as the exact horizontal extent; the geometric factor
``sqrt(1 + alpha^2)`` leaves the quadratic field and is applied only when a
numeric length is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import CornerHit, InvariantViolation, PreconditionNotMet
from .exact import QuadraticIrrational
from .surface import PolysquareSurface
from .uniformity import EdgeHeights

_ZERO = QuadraticIrrational.from_int(0)
_ONE = QuadraticIrrational.from_int(1)


@dataclass(frozen=True, slots=True)
class FlowState:
    """Position inside one square chart, plus slope and accumulated extent."""

    square: int
    x: QuadraticIrrational
    y: QuadraticIrrational
    alpha: QuadraticIrrational
    extent: QuadraticIrrational


@dataclass(frozen=True, slots=True)
class StepEvent:
    """One edge event: exit point in the chart just left, square entered."""

    kind: str  # "right" | "top"
    square: int
    exit_x: QuadraticIrrational
    exit_y: QuadraticIrrational
    dx: QuadraticIrrational


@dataclass(frozen=True, slots=True)
class Crossing:
    k: int
    edge: int
    height: QuadraticIrrational


@dataclass(frozen=True, slots=True)
class SegmentPiece:
    square: int
    x0: QuadraticIrrational
    y0: QuadraticIrrational
    x1: QuadraticIrrational
    y1: QuadraticIrrational


def initial_state(
    surface: PolysquareSurface,
    alpha: QuadraticIrrational,
    y0: Fraction,
    square: int = 0,
) -> FlowState:
    issues = surface.validate()
    if issues:
        raise InvariantViolation("; ".join(issues))
    if alpha.is_rational or alpha.sign() <= 0:
        raise PreconditionNotMet("slope must be a positive irrational")
    y0 = Fraction(y0)
    if not 0 < y0 < 1:
        raise PreconditionNotMet("starting height must be rational in (0, 1)")
    if not 0 <= square < surface.squares:
        raise PreconditionNotMet(f"no square {square} on this surface")
    return FlowState(square, _ZERO, QuadraticIrrational.from_fraction(y0), alpha, _ZERO)


def step(state: FlowState, surface: PolysquareSurface) -> tuple[FlowState, StepEvent]:
    """Advance to the next edge crossing."""
    rise = state.alpha * (_ONE - state.x)
    room = _ONE - state.y
    order = rise._cmp(room)
    if order == 0:
        raise CornerHit(f"trajectory hits a corner leaving square {state.square}")
    if order < 0:
        # right edge first
        height = state.y + rise
        dx = _ONE - state.x
        entered = surface.right[state.square]
        event = StepEvent("right", entered, _ONE, height, dx)
        new = FlowState(entered, _ZERO, height, state.alpha, state.extent + dx)
    else:
        dx = room / state.alpha
        exit_x = state.x + dx
        entered = surface.top[state.square]
        event = StepEvent("top", entered, exit_x, _ONE, dx)
        new = FlowState(entered, exit_x, _ZERO, state.alpha, state.extent + dx)
    return new, event


class CrossingSet:
    """Ordered first-n vertical-edge crossings of one trajectory.

    The height of crossing ``k`` equals ``{y0 + k*alpha}``: heights are
    slope-driven regardless of the gluing, which is what the torus-reduction
    cross-checks exploit.
    """

    __slots__ = ("alpha", "surface", "start_square", "y0", "n", "crossings", "_per_edge", "_family_cache")

    def __init__(self, alpha, surface, start_square, y0, n, crossings):
        self.alpha = alpha
        self.surface = surface
        self.start_square = start_square
        self.y0 = y0
        self.n = n
        self.crossings = crossings
        self._per_edge: dict[int, EdgeHeights] | None = None
        self._family_cache: dict = {}

    def heights(self) -> list[QuadraticIrrational]:
        return [c.height for c in self.crossings]

    def per_edge_heights(self) -> dict[int, EdgeHeights]:
        """Heights grouped by vertical edge; every edge circle is present."""
        if self._per_edge is None:
            groups: dict[int, list[QuadraticIrrational]] = {
                e: [] for e in range(self.surface.squares)
            }
            for crossing in self.crossings:
                groups[crossing.edge].append(crossing.height)
            self._per_edge = {e: EdgeHeights.build(pts) for e, pts in groups.items()}
        return self._per_edge


def trace_crossings(
    surface: PolysquareSurface,
    alpha: QuadraticIrrational,
    y0: Fraction,
    n: int,
    square: int = 0,
) -> CrossingSet:
    """First ``n`` vertical-edge crossings of the trajectory from ``(square, 0, y0)``."""
    if n < 0:
        raise PreconditionNotMet("n must be >= 0")
    state = initial_state(surface, alpha, y0, square)
    crossings: list[Crossing] = []
    k = 0
    while k < n:
        state, event = step(state, surface)
        if event.kind == "right":
            k += 1
            crossings.append(Crossing(k, event.square, event.exit_y))
    return CrossingSet(alpha, surface, square, Fraction(y0), n, crossings)


def _pieces(
    surface: PolysquareSurface,
    alpha: QuadraticIrrational,
    y0: Fraction,
    square: int,
) -> Iterator[tuple[SegmentPiece, QuadraticIrrational]]:
    """Unbounded stream of per-square chart pieces with their dx."""
    state = initial_state(surface, alpha, y0, square)
    while True:
        new, event = step(state, surface)
        yield SegmentPiece(state.square, state.x, state.y, event.exit_x, event.exit_y), event.dx
        state = new


def trace_segment(
    surface: PolysquareSurface,
    alpha: QuadraticIrrational,
    y0: Fraction,
    extent: Fraction,
    square: int = 0,
) -> list[SegmentPiece]:
    """Chart pieces covering the given horizontal extent.

    ``extent`` is horizontal: the corresponding arc length is
    ``extent * sqrt(1 + alpha^2)``.
    """
    extent = Fraction(extent)
    if extent < 0:
        raise PreconditionNotMet("extent must be >= 0")
    pieces: list[SegmentPiece] = []
    if extent == 0:
        return pieces
    remaining = QuadraticIrrational.from_fraction(extent)
    for piece, dx in _pieces(surface, alpha, y0, square):
        if dx < remaining:
            pieces.append(piece)
            remaining = remaining - dx
        else:
            if remaining.sign() > 0:
                x_cut = piece.x0 + remaining
                y_cut = piece.y0 + alpha * remaining
                pieces.append(SegmentPiece(piece.square, piece.x0, piece.y0, x_cut, y_cut))
            break
    return pieces


@dataclass(frozen=True)
class CoverageEstimate:
    """Smallest traced length whose segment passes near every grid center."""

    m: int
    grid: int
    centers: int
    extent: float
    arc_length: float

    @property
    def arc_per_m(self) -> float:
        return self.arc_length / self.m


def _segment_distance_sq(px, py, x0, y0, x1, y1) -> float:
    wx, wy = x1 - x0, y1 - y0
    norm = wx * wx + wy * wy
    if norm <= 0.0:
        dx, dy = px - x0, py - y0
        return dx * dx + dy * dy
    t = ((px - x0) * wx + (py - y0) * wy) / norm
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    dx, dy = px - (x0 + t * wx), py - (y0 + t * wy)
    return dx * dx + dy * dy


def coverage_radius_estimate(
    surface: PolysquareSurface,
    alpha: QuadraticIrrational,
    m: int,
    y0: Fraction = Fraction(1, 2),
    square: int = 0,
    max_extent: float = 1e6,
) -> CoverageEstimate:
    """Minimal traced length passing within ``1/m`` of every surface point.

    Closeness is tested against a grid of centers at resolution ``1/(2m)``
    inside each square's own chart, so gluing shortcuts are ignored and the
    returned length upper-bounds the true minimal one.  The trajectory is
    walked once; the answer is the extent at which the last center is first
    covered.  Distances are evaluated in floating point off the exact piece
    endpoints (the result is an estimate, not a certificate).
    """
    if m < 1:
        raise PreconditionNotMet("m must be >= 1")
    g = 2 * m
    radius = 1.0 / m
    r_sq = radius * radius
    uncovered: set[tuple[int, int, int]] = {
        (s, i, j) for s in range(surface.squares) for i in range(g) for j in range(g)
    }
    total = len(uncovered)
    alpha_f = float(alpha)
    extent_f = 0.0
    for piece, dx in _pieces(surface, alpha, y0, square):
        x0, ypc0, x1, ypc1 = float(piece.x0), float(piece.y0), float(piece.x1), float(piece.y1)
        extent_f += float(dx)
        lo_i = max(0, int(math.floor((min(x0, x1) - radius) * g - 0.5)) - 1)
        hi_i = min(g - 1, int(math.ceil((max(x0, x1) + radius) * g - 0.5)) + 1)
        lo_j = max(0, int(math.floor((min(ypc0, ypc1) - radius) * g - 0.5)) - 1)
        hi_j = min(g - 1, int(math.ceil((max(ypc0, ypc1) + radius) * g - 0.5)) + 1)
        s = piece.square
        for i in range(lo_i, hi_i + 1):
            cx = (i + 0.5) / g
            for j in range(lo_j, hi_j + 1):
                cell = (s, i, j)
                if cell not in uncovered:
                    continue
                cy = (j + 0.5) / g
                if _segment_distance_sq(cx, cy, x0, ypc0, x1, ypc1) <= r_sq:
                    uncovered.discard(cell)
        if not uncovered:
            return CoverageEstimate(
                m=m,
                grid=g,
                centers=total,
                extent=extent_f,
                arc_length=extent_f * math.hypot(1.0, alpha_f),
            )
        if extent_f > max_extent:
            raise PreconditionNotMet(
                f"no coverage within extent {max_extent}; {len(uncovered)} centers left"
            )
    raise AssertionError("unreachable: piece stream is infinite")
