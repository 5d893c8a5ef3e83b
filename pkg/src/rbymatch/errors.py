"""Exception hierarchy shared across the package."""

from __future__ import annotations


class RbyMatchError(Exception):
    """Base class for all package-specific errors."""


class ParseError(RbyMatchError):
    """Raised when an instance file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceededError(RbyMatchError):
    """Raised when an instance is too large for exhaustive machinery."""


class InvariantError(RbyMatchError):
    """Raised when an internal guarantee that must always hold fails."""


class CrossingNotFoundError(InvariantError):
    """Raised when no certified crossing pair exists for an injective curve.

    This would falsify a structural guarantee of the algorithm, so it is a
    distinct fatal error rather than an ordinary "not found" result.
    """
