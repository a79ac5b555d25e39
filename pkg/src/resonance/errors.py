"""Exception types shared across the engine."""

from __future__ import annotations


class ResonanceError(Exception):
    """Base class for all engine errors."""


class ParseError(ResonanceError, ValueError):
    """Malformed textual input (weights, partitions, symbolic forms)."""


class ResourceLimitError(ResonanceError):
    """A configured enumeration bound would be exceeded."""


class InvalidCutError(ResonanceError, ValueError):
    """A set of sign vectors fails the cut conditions."""

    def __init__(self, message: str, violation=None):
        super().__init__(message)
        self.violation = violation


class IncompleteClosureError(ResourceLimitError):
    """The closure search hit its state cap; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantViolation(ResonanceError):
    """An internal consistency check failed (route disagreement, bad witness...)."""


class NotClosedError(ResonanceError, ValueError):
    """A set of partitions is not closed under the closure operator of a cut."""
