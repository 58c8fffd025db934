"""Exception types shared across the package."""


class EmptyRangeError(ValueError):
    """A range query was made below the smallest meaningful input."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceError(RuntimeError):
    """A configured memory/work budget would be exceeded.

    Carries an optional ``cursor`` describing exactly where the computation
    stopped, so callers can resume after raising the budget.
    """

    def __init__(self, message: str, cursor: dict | None = None):
        super().__init__(message)
        self.cursor = cursor


class PrecisionCapError(RuntimeError):
    """Escalation hit the configured precision cap before resolving."""


class ExactWorkBoundError(RuntimeError):
    """An exact big-integer comparison would exceed the work bound."""


class CheckpointError(RuntimeError):
    """A checkpoint file is corrupt, incomplete, or inconsistent."""


class UsageError(ValueError):
    """A job specification is invalid (CLI exits with code 64)."""
