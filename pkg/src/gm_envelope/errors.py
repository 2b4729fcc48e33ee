"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for bad arguments or malformed input, 3 for domain infeasibility.
"""

from __future__ import annotations


class GmEnvelopeError(Exception):
    """Base class for all library errors."""

    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


# argument / input errors -------------------------------------------------

class InvalidProfile(GmEnvelopeError, ValueError):
    """(n, mu, sigma) violates n >= 2, mu > 0, sigma >= 0."""


class InvalidLength(GmEnvelopeError, ValueError):
    """Fewer than two values supplied."""


class InvalidTypeIndex(GmEnvelopeError, ValueError):
    """Critical-point type index outside 1..n-1."""


class OutOfDomain(GmEnvelopeError, ValueError):
    """Argument outside the domain of a closed-form expression."""


class ParseError(GmEnvelopeError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# domain infeasibility ----------------------------------------------------

class DomainError(GmEnvelopeError):
    exit_code = 3


class NoPositiveSequence(DomainError, ValueError):
    """No all-positive sequence has the requested mean and deviation."""


class InfimumNotAttained(DomainError, ValueError):
    """The lower bound is an infimum (zero) that no positive sequence reaches."""


class DegenerateLadder(DomainError, ValueError):
    """sigma = 0 leaves a single critical point (mu, ..., mu)."""


class NonPositiveInput(DomainError, ValueError):
    pass


class ImpossibleReturn(DomainError, ValueError):
    """A return r <= -1 would make the growth factor 1 + r non-positive."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidRobustParams(DomainError, ValueError):
    pass


class LadderOrderingError(GmEnvelopeError, ArithmeticError):
    """Internal consistency failure: critical values out of the proven order."""

    exit_code = 1
