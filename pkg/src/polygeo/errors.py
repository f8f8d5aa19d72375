"""Exception types shared across the package.

Every library error derives from :class:`PolygeoError`; the ``code`` attribute
is the stable machine-readable identifier emitted by the CLI error channel.
"""


class PolygeoError(Exception):
    code = "Error"


class BadArgs(PolygeoError):
    code = "BadArgs"


class MixedRadicand(PolygeoError):
    """Arithmetic between irrationals living in different quadratic fields."""

    code = "MixedRadicand"


class PeriodNotFound(PolygeoError):
    """Continued-fraction state never repeated within the digit budget."""

    code = "PeriodNotFound"


class NoThresholdBelowN(PolygeoError):
    """Even the largest admissible window scale fails the uniformity check."""

    code = "NoThresholdBelowN"


class CornerHit(PolygeoError):
    """The flow reached a square corner exactly (tie between edge events)."""

    code = "CornerHit"


class MalformedFile(PolygeoError):
    code = "MalformedFile"


class InvariantViolation(PolygeoError):
    code = "InvariantViolation"


class PreconditionNotMet(PolygeoError):
    code = "PreconditionNotMet"
