"""Exception hierarchy shared by the whole library.

Every failure mode surfaces as a typed exception; no operation returns
NaN or infinity silently.
"""

from __future__ import annotations


class StruveintError(Exception):
    """Base class for all library errors."""


class GammaPoleError(StruveintError):
    """An argument landed on (or within tolerance of) a pole of Gamma.

    ``location`` is the nearest non-positive integer.
    """

    def __init__(self, location: int, message: str | None = None):
        self.location = location
        super().__init__(message or f"gamma pole at non-positive integer {location}")


class RangeError(StruveintError):
    """A result's magnitude left the representable double range."""


class DomainError(StruveintError, ValueError):
    """A precondition on the inputs is violated (message names it)."""


class ConvergenceError(StruveintError):
    """An iterative evaluation hit its budget before meeting tolerance."""


class DivergenceError(StruveintError):
    """The requested series is provably divergent for the given inputs."""


class CaseParseError(StruveintError, ValueError):
    """A case file or CLI parameter failed to parse (message names the field)."""
