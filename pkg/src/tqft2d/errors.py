"""Exception types raised by the library.

The CLI maps these onto exit codes: ParseError -> 2, everything else
derived from TqftError -> 3.
"""

from __future__ import annotations


class TqftError(Exception):
    """Base class for all domain errors."""


class LabelError(TqftError):
    """Duplicate, colliding or unknown boundary/index label."""


class OrientationError(TqftError):
    """A pairing that requires opposite orientation signs got equal ones."""


class DimensionError(TqftError):
    """Tensors of incompatible index dimension were combined."""


class BackendError(TqftError):
    """Exact-rational and complex-float scalars were mixed in one expression."""


class RelationError(TqftError):
    """Tensor data does not satisfy the classification relations (or the
    symmetry required at construction time)."""


class ParseError(TqftError):
    """Malformed text input. Carries a 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, col {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
