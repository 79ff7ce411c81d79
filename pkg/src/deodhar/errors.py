"""Exception hierarchy shared across the package."""


class DeodharError(Exception):
    """Base class for all package errors."""


class ConfigError(DeodharError):
    """Unsupported type/rank, malformed word, or invalid twist data."""


class BudgetError(DeodharError):
    """An enumeration would exceed the configured brute-force budget."""


class NotComparableError(DeodharError):
    """Raised when an operation requires v <= w in Bruhat order."""


class EmptyCellError(DeodharError):
    """Raised for cell-level operations on a non-distinguished subexpression."""


class PreconditionError(DeodharError):
    """A mathematical precondition of the operation is violated."""
