"""Exception types shared across the package."""

from __future__ import annotations


class SrChromaError(Exception):
    """Base class for all sr-chroma errors."""


class GraphParseError(SrChromaError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(SrChromaError):
    """A documented precondition or argument contract was violated."""


class IncompleteTableError(SrChromaError):
    """An operation table is missing a required generator entry."""

    def __init__(self, generator: str, k: int):
        self.generator = generator
        self.k = k
        super().__init__(f"table has no entry for P^{k}({generator})")


class SearchSpaceExceeded(SrChromaError):
    """The action search hit its node budget before finishing."""

    def __init__(self, message: str, estimate: int):
        self.estimate = estimate
        super().__init__(message)
