"""Exception hierarchy shared by all ratpull modules.

Two families matter for callers: :class:`InputError` covers malformed data
(documents, graphs, broken invariants), while :class:`Refusal` covers inputs
that are well-formed but fall outside the mathematical guarantee, so the
computation declines rather than returning numbers it cannot certify. The
CLI maps these to exit codes 2 and 1 respectively.
"""

from __future__ import annotations


class RatpullError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RatpullError):
    """Malformed input data (documents, graphs, violated invariants)."""


class ParseError(InputError):
    """A document could not be parsed; carries an optional location."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)


class InvariantViolation(InputError):
    """A structural invariant of a domain type failed, named in the message."""


class InvalidGraph(InputError):
    """A dual graph violates its invariants (signs, loops, duplicate edges)."""


class ZeroDenominator(RatpullError):
    """A rational was constructed with denominator zero."""


class NonSquare(RatpullError):
    """A square-only matrix operation received a non-square matrix."""


class DimensionMismatch(RatpullError):
    """Operand dimensions are incompatible."""


class DimensionCapExceeded(RatpullError):
    """Matrix side exceeds the dimension cap (default 64, RATPULL_MAX_DIM)."""


class Singular(RatpullError):
    """Matrix inversion or solving was attempted on a singular matrix."""


class Refusal(RatpullError):
    """Base class for mathematical refusals: the input is readable but lies
    outside the theorem's hypotheses, so no certified answer exists."""


class NotZPattern(Refusal):
    """An off-diagonal entry is positive, breaking the Z-sign pattern."""

    def __init__(self, row: int, col: int, entry=None):
        self.row = row
        self.col = col
        self.entry = entry
        detail = f" (entry {entry})" if entry is not None else ""
        super().__init__(f"not a Z-matrix: positive off-diagonal at ({row}, {col}){detail}")


class SignViolation(Refusal):
    """phi breaks the required sign pattern (negative diagonal, nonnegative
    off-diagonal)."""

    def __init__(self, row: int, col: int, entry=None):
        self.row = row
        self.col = col
        self.entry = entry
        kind = "diagonal not negative" if row == col else "off-diagonal negative"
        detail = f" (entry {entry})" if entry is not None else ""
        super().__init__(f"sign violation at ({row}, {col}): {kind}{detail}")


class AdjacencyViolation(Refusal):
    """phi and the declared adjacency disagree on the zero-iff-disjoint rule."""

    def __init__(self, row: int, col: int, message: str):
        self.row = row
        self.col = col
        super().__init__(f"adjacency inconsistency at ({row}, {col}): {message}")


class DisconnectedConfiguration(Refusal):
    """The adjacency graph of the exceptional divisors is not connected."""

    def __init__(self, components: tuple[tuple[int, ...], ...]):
        self.components = components
        super().__init__(
            f"disconnected configuration: {len(components)} components {components}"
        )


class NotMMatrix(Refusal):
    """Certification failed: A = -phi^T is not an invertible M-matrix."""


class NegativeLambda(Refusal):
    """An intersection number lambda_j is negative (curve inside D')."""

    def __init__(self, index: int, value=None):
        self.index = index
        self.value = value
        detail = f" = {value}" if value is not None else ""
        super().__init__(f"negative lambda at index {index}{detail}")


class NoRationalPullback(Refusal):
    """Small-resolution obstruction: r = 0 but a vertical curve pairs
    nontrivially with the divisor class."""

    def __init__(self, witness: str | None = None):
        self.witness = witness
        detail = f" (witness curve {witness!r})" if witness else ""
        super().__init__(f"no rational pullback: small-resolution obstruction{detail}")


class NotSymmetric(Refusal):
    """The surface path requires a symmetric intersection matrix."""


class NotNegativeDefinite(Refusal):
    """The surface path requires phi to be negative-definite."""


class InternalInconsistency(RatpullError):
    """Two exact M-matrix characterizations disagreed. This is a bug in the
    implementation, never a property of the data."""


class NotFittedError(RatpullError):
    """An estimator method was called before fit()."""
