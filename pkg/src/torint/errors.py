"""Exception types shared across the package.

Two families matter to callers: DomainError for mathematically
well-formed requests that have no answer (poles, factor bounds,
inconsistent models), and InputFormatError for documents or
expressions that cannot be parsed at all.  The CLI maps them to
exit codes 1 and 2 respectively.
"""


class TorintError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TorintError):
    """A valid-looking input outside the operation's domain."""


class InputFormatError(TorintError):
    """Malformed document, expression, or option value."""


class DimensionMismatch(DomainError):
    """Operands live in different ambient dimensions."""


class FactorBoundExceeded(DomainError):
    """A rational could not be factored within the trial-division bound."""


class NotOnTorus(DomainError):
    """A coordinate degenerates to zero or a pole, leaving the torus."""


class ConstantCurveError(DomainError):
    """Every coordinate is constant; the object is a point, not a curve."""


class RelationInClosureError(DomainError):
    """The exponent vector already lies in the constant-relation lattice."""


class ModelInvariantError(DomainError):
    """A finite flat model violates one of its structural invariants."""
