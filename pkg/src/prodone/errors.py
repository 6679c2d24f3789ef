"""Exception taxonomy shared across the package."""

from __future__ import annotations


class ProdOneError(Exception):
    """Base class for all package errors."""


class BadParameter(ProdOneError):
    """A constructor parameter is outside its admissible range."""


class InvalidTwist(BadParameter):
    """The twist exponent of a semidirect product is not an automorphism."""


class NotNormal(ProdOneError):
    """A quotient was requested by a subgroup that is not normal."""


class BadShape(ProdOneError):
    """The group does not have the structural form the operation requires."""


class NotAbelian(ProdOneError):
    """An abelian-only computation was invoked on a non-abelian group."""


class ParseError(ProdOneError):
    """A textual spec failed to parse. ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BudgetExceeded(ProdOneError):
    """An exact computation would exceed its configured state budget.

    ``best_length`` carries the best exact lower bound found before the
    search gave up, when a search was in progress.
    """

    def __init__(self, message: str, best_length: int | None = None):
        super().__init__(message)
        self.best_length = best_length


class TooShort(ProdOneError):
    """The input sequence is below the extractor's guaranteed threshold."""


class StructureViolated(ProdOneError):
    """A boundary-length input matched neither the witness nor the
    two-value structure case. This would contradict the underlying
    combinatorial fact and is surfaced loudly."""


class TheoremViolation(ProdOneError):
    """A proof-mirroring step failed an assertion that is guaranteed by the
    theorem being implemented. Carries the extraction trace when present."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
