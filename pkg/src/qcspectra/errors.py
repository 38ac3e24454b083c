"""Exception hierarchy.

Domain errors (bad input, degenerate spectra) derive from ``DomainError``;
failures that indicate a bug or a broken mathematical guarantee derive from
``InconsistencyError``. The CLI maps the two families to exit codes 1 and 2.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input is outside the domain of an operation."""


class InvalidArgumentError(DomainError):
    pass


class NonDivisibleError(DomainError):
    """Raised by exact polynomial division when the remainder is nonzero."""

    def __init__(self, remainder, message: str | None = None) -> None:
        self.remainder = remainder
        super().__init__(message or f"division leaves nonzero remainder {remainder}")


class DegenerateSpectrumError(DomainError):
    """The spectrum has fewer than two distinct eigenvalue clusters."""


class IrregularCodeError(DomainError):
    def __init__(self, message: str, column_histogram: dict[int, int], row_histogram: dict[int, int]) -> None:
        self.column_histogram = column_histogram
        self.row_histogram = row_histogram
        super().__init__(message)


class StructureError(DomainError):
    """A dense matrix does not have the requested nested-circulant structure."""

    def __init__(self, row: int, col: int, expected: float, found: float) -> None:
        self.row = row
        self.col = col
        super().__init__(
            f"entry ({row}, {col}) is {found!r}, structure requires {expected!r}"
        )


class ParseError(DomainError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None) -> None:
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


class NonConvergenceError(RuntimeError):
    def __init__(self, sweeps: int, residual: float) -> None:
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {residual:.3e})"
        )


class InconsistencyError(RuntimeError):
    """An internal cross-check failed (oracle disagreement, broken identity)."""
