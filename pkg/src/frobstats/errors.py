"""Exception types shared across frobstats."""


class FrobstatsError(Exception):
    """Base class for library errors."""


class DomainError(FrobstatsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ModelError(FrobstatsError, ValueError):
    """A curve model violates its invariants (not powerfree, bad genus, ...)."""


class BudgetExceeded(FrobstatsError):
    """An enumeration would exceed the configured budget.

    ``required`` carries the number of objects the request would need.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class IdentityViolation(FrobstatsError, AssertionError):
    """An exact mathematical identity failed; ``detail`` holds a diagnostic dump."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail
