"""Exception hierarchy.

Failed axiom checks are never raised: they become report entries. Exceptions are reserved for
bad input, violated preconditions and constructions that must verify but did not.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .reporting import VerificationReport


class AqtError(Exception):
    """Base class for every error raised by this package."""


class InputError(AqtError):
    """Malformed or inconsistent input data (CLI exit code 2)."""

    def __init__(self, message: str, *, location: str | None = None) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class GroupAxiomError(InputError):
    def __init__(self, message: str, *, witness: tuple[Any, ...]) -> None:
        self.witness = witness
        super().__init__(f"{message} (witness {witness})")


class DimensionMismatchError(InputError):
    pass


class PreconditionError(AqtError):
    """An operation was called on data violating its stated precondition (CLI exit code 1)."""


class NotHermitianError(PreconditionError):
    pass


class NotFaithfulError(PreconditionError):
    pass


class GammaIncompatibleError(PreconditionError):
    pass


class ProvenanceMissingError(PreconditionError):
    pass


class NotYetterDrinfeldError(PreconditionError):
    pass


class UnsolvableError(AqtError):
    """Right-hand side outside the image of a linear map."""


class VerificationFailure(AqtError):
    """A construction that must verify produced failing checks (CLI exit code 1)."""

    def __init__(self, report: VerificationReport) -> None:
        self.report = report
        failed = ", ".join(check.name for check in report.failed()[:5])
        super().__init__(f"{report.label}: failed checks {failed}")
