"""Exception hierarchy shared across the package.

Two broad classes matter for the command line driver: bad input
(ValidationError, exit code 2) and violated internal consistency checks
(ConsistencyError, exit code 3). Everything else is a plain bug.
"""


class ConicRankError(Exception):
    """Base class for all package errors."""


class ValidationError(ConicRankError):
    """The input curve violates a precondition of the theory."""


class ParseError(ValidationError):
    """Malformed curve expression; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ConsistencyError(ConicRankError):
    """An identity that must hold for every valid curve failed."""


class RationalityViolation(ConsistencyError):
    """Euler numbers of the elliptic fibers do not sum to 12."""


class ComponentSumViolation(ConsistencyError):
    """Conic fiber components do not sum to 8."""


class TableMismatch(ConsistencyError):
    """The (G_infinity, shared fiber) configuration is not a known one."""


class SharedFiberInconsistency(ConsistencyError):
    """The zero pattern of a3 contradicts the conic fiber at infinity."""


class UnclassifiableTriple(ConsistencyError):
    """A minimal valuation triple matched no Kodaira type."""


class NegativeRank(ConsistencyError):
    """Shioda-Tate produced a negative rank."""


class NegativeDefect(ConsistencyError):
    """delta - r came out negative."""


class VerificationFailure(ConsistencyError):
    """An exact point identity that must hold failed to verify."""
