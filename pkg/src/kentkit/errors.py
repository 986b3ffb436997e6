"""Error taxonomy shared across the package.

Every raised condition carries enough payload to reproduce it: structural
errors name the offending pair/element, capacity errors the exceeded bound,
parse errors a 1-based source span.
"""

from __future__ import annotations

from dataclasses import dataclass


class KentKitError(Exception):
    """Base class for all library errors."""


class StructuralError(KentKitError):
    """An input object violates a structural invariant (not a lattice,
    not an equivalence, inconsistent dual routes, ...). `witness` holds
    the failing element or pair when one exists."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(KentKitError):
    """A documented precondition of the called operation does not hold."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class CapacityError(KentKitError):
    """A configured size or evaluation bound would be exceeded."""

    def __init__(self, message: str, bound: int | None = None, requested: int | None = None):
        super().__init__(message)
        self.bound = bound
        self.requested = requested


class EvalError(KentKitError):
    """Term evaluation failed (unbound variable, arity misuse)."""


@dataclass(frozen=True)
class SourceSpan:
    """1-based location of a token or region in an input document."""

    file: str
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ParseError(KentKitError):
    """Input text rejected; always carries a span."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.reason = message
        self.span = span


class UsageError(KentKitError):
    """Command line invoked with missing/contradictory arguments."""
