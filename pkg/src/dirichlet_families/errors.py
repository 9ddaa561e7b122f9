"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the region where an operation is defined."""


class ParseError(DomainError):
    """Malformed serialized input.

    ``position`` locates the offending item: an array index for structural
    problems, or ``(line, column)`` for JSON syntax errors.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class ResourceError(RuntimeError):
    """A tolerance could not be reached within the configured limits."""

    def __init__(self, message, achieved=None):
        if achieved is not None:
            message = f"{message}; achieved bound {achieved:.3e}"
        super().__init__(message)
        self.achieved = achieved
