"""Exception hierarchy for the checker.

Failures of a mathematical law are reported as data. These exceptions are
for malformed input and for broken call contracts.
"""
from typing import Any, Optional


class HomCheckError(Exception):
    """Base class for every error raised by the package."""


class SignatureMismatchError(HomCheckError, ValueError):
    """Two elements (or an element and a map) live in different algebras."""


class InvalidElementError(HomCheckError, ValueError):
    """Wrong block shapes, wrong coordinate length or non-finite entries."""


class NotSelfAdjointError(HomCheckError, ValueError):
    """An operation that needs a selfadjoint element received something else."""


class NotPositiveError(HomCheckError, ValueError):
    """An operation that needs a positive element received something else."""


class StructureError(HomCheckError, ValueError):
    """A structured homomorphism tree is malformed."""


class UnverifiedMapError(HomCheckError):
    """An operation that needs a verified homomorphism received a map that fails."""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class DecompositionError(HomCheckError):
    """The projection decomposition produced a residual above tolerance."""

    def __init__(self, message: str, decomposition: Optional[Any] = None):
        super().__init__(message)
        self.decomposition = decomposition


class DocumentError(HomCheckError, ValueError):
    """A document (algebra, element, map or report) could not be parsed."""
