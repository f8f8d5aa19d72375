"""Exact geodesic flow on polysquare surfaces and irrational rotations."""

from .cfrac import (
    ContinuedFraction,
    Convergent,
    OstrowskiDigits,
    approximation_gap,
    expand,
    ostrowski_decompose,
    ostrowski_validate,
)
from .errors import (
    BadArgs,
    CornerHit,
    InvariantViolation,
    MalformedFile,
    MixedRadicand,
    NoThresholdBelowN,
    PeriodNotFound,
    PolygeoError,
    PreconditionNotMet,
)
from .exact import (
    PHI,
    SQRT2,
    SQRT3,
    Ordering,
    QuadraticIrrational,
    Rational,
    compare,
    parse_rational,
    parse_value,
    square_root,
)
from .flow import (
    CoverageEstimate,
    Crossing,
    CrossingSet,
    FlowState,
    SegmentPiece,
    StepEvent,
    coverage_radius_estimate,
    initial_state,
    step,
    trace_crossings,
    trace_segment,
)
from .rotation import (
    OrbitPrefix,
    UnitInterval,
    integer_hit_count,
    orbit,
    orbit_threshold,
    residue_index,
    trivial_error_witness,
    visiting_number,
)
from .surface import FIXTURES, PolysquareSurface, fixture, load_surface, resolve_surface, save_surface
from .uniformity import (
    CaseLabel,
    EdgeHeights,
    IntervalFamilySpec,
    ThresholdBracket,
    UniformityReport,
    WindowExtremes,
    WindowWitness,
    classify_case,
    coarse_window_check,
    crossing_threshold,
    family_extremes,
    ladder_lengths,
    threshold_search,
    visiting_extremes,
    window_check,
)

__version__ = "0.1.0"
