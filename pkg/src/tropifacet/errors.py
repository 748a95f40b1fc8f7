"""Exception hierarchy shared by every tropifacet module."""


class TropifacetError(Exception):
    """Base class for all library errors."""


class DimensionError(TropifacetError, ValueError):
    """Operands have incompatible shapes."""


class ValidationError(TropifacetError, ValueError):
    """Input data violates a documented invariant."""


class PreconditionError(TropifacetError):
    """An operation was called outside its contract (e.g. a non-pure polytope)."""


class BudgetExceeded(TropifacetError):
    """An enumeration ran past its configured resource cap."""

    def __init__(self, message, **counts):
        super().__init__(message)
        self.counts = counts


class DegeneracyError(TropifacetError):
    """A lift is not in general position where general position is required."""

    def __init__(self, message, support=None):
        super().__init__(message)
        self.support = support


class InternalInconsistency(TropifacetError):
    """Two independent computations of the same quantity disagree.

    Raising this always signals a bug, never bad input.
    """


class TheoremViolation(TropifacetError):
    """A runtime certificate for a proved statement failed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
