"""Exception hierarchy shared by the services, the CLI and the HTTP layer.

Every error is a ``ValueError`` so callers that only guard against bad input
keep working. ``exit_code`` is what the CLI returns, ``status_code`` what the
API answers with.
"""

from fastapi import HTTPException, status


class LimitRootsError(ValueError):
    """Base class for all library errors."""

    exit_code: int = 4
    status_code: int = status.HTTP_409_CONFLICT


# --- invalid input data (exit 2) -------------------------------------------


class ParseError(LimitRootsError):
    """Malformed datum, Coxeter or overrides document."""

    exit_code = 2
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class InvalidDatum(LimitRootsError):
    """The matrix violates the Coxeter datum conditions."""

    exit_code = 2
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


# --- bad arguments (exit 3) -------------------------------------------------


class DimensionMismatch(LimitRootsError):
    exit_code = 3
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class IndexOutOfRange(LimitRootsError):
    exit_code = 3
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class BadRootSpec(LimitRootsError):
    """A ``WORD@k`` root specification that does not parse or is not positive."""

    exit_code = 3
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class BadArguments(LimitRootsError):
    exit_code = 3
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


# --- capacity and numeric failures (exit 4) -----------------------------------


class CapacityExceeded(LimitRootsError):
    status_code = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE


class OnZeroHyperplane(LimitRootsError):
    """Vector with zero coordinate sum: it has no normalization."""


class LeavesChartD(LimitRootsError):
    """An intermediate image of the dot action left the chart D."""


class NoConvergence(LimitRootsError):
    pass


class Degenerate(LimitRootsError):
    """Tangent configuration where the separation test cannot decide."""


class NotComparable(LimitRootsError):
    """No dominance between the two roots (B(x, y) < 1)."""


class BaseNotInTable(LimitRootsError):
    pass


class AffinePair(LimitRootsError):
    """Operation only defined for hyperbolic (B(a, b) < -1) pairs."""


class DegenerateSeed(LimitRootsError):
    pass


class EmptySelection(LimitRootsError):
    pass


class IdenticalPoints(LimitRootsError):
    pass


class NotIsotropic(LimitRootsError):
    pass


class NoHyperbolicPairs(LimitRootsError):
    pass


# --- dihedral precondition (exit 5) ---------------------------------------------


class NotInfiniteDihedral(LimitRootsError):
    """B(a, b) > -1: the pair generates a finite dihedral group."""

    exit_code = 5


def to_http_exception(error: LimitRootsError) -> HTTPException:
    """HTTP form of a library error, keeping its message as the detail."""
    return HTTPException(status_code=error.status_code, detail=f"{type(error).__name__}: {error}")
