"""Exact rational scalars, vectors and dense matrices.

Every quantity that feeds a verdict anywhere in this package is a
:class:`fractions.Fraction`; no floating point enters any code path here.
The scalar type is the stdlib ``Fraction`` (always reduced, denominator
positive, exact field operations); this module adds the coercion helpers
and a small immutable dense-matrix type with exact determinant, inverse
and row-vector solve.

Determinants use Bareiss fraction-free elimination on a common-denominator
integer lift of the matrix, which keeps intermediate growth polynomial.
Inverses use exact Gauss-Jordan, taking the first nonzero pivot (any
nonzero pivot is valid in exact arithmetic; the first keeps runs
deterministic).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    NonSquare,
    ParseError,
    Singular,
    ZeroDenominator,
)

Rational = Fraction
RatVector = tuple[Fraction, ...]
RationalLike = Union[int, Fraction, str]

DEFAULT_DIMENSION_CAP = 64
_MAX_DIM_ENV = "RATPULL_MAX_DIM"


def dimension_cap() -> int:
    """Current matrix dimension cap (RATPULL_MAX_DIM env var, default 64).

    Exceptional configurations are small; the cap bounds bignum blowup.
    """
    raw = os.environ.get(_MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_DIMENSION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"{_MAX_DIM_ENV} must be a positive integer, got {raw!r}")
    if cap < 1:
        raise ParseError(f"{_MAX_DIM_ENV} must be a positive integer, got {raw!r}")
    return cap


def rat(num: int, den: int = 1) -> Fraction:
    """Reduced fraction num/den with positive denominator."""
    if den == 0:
        raise ZeroDenominator(f"rational {num}/0 has zero denominator")
    return Fraction(num, den)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction.

    Floats are rejected: they would silently smuggle rounding into exact
    arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"not a rational: {value!r} (floats are not accepted)")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus) into a Fraction."""
    s = text.strip()
    try:
        value = Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in rational {text!r}")
    except ValueError:
        raise ParseError(f"malformed rational {text!r}")
    if "." in s or "e" in s.lower():
        # Fraction("1.5") parses, but decimals are not part of the format.
        raise ParseError(f"decimal notation not accepted for rationals: {text!r}")
    return value


def format_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(value)


def as_vector(entries: Iterable[RationalLike], length: int | None = None) -> RatVector:
    """Coerce a sequence to a tuple of Fractions, optionally checking length."""
    vec = tuple(as_rational(x) for x in entries)
    if length is not None and len(vec) != length:
        raise DimensionMismatch(f"expected vector of length {length}, got {len(vec)}")
    return vec


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of exact rationals, stored row-major.

    All operations return fresh matrices, so instances can be shared freely
    (also between threads: there is no interior mutation anywhere).
    """

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        cap = dimension_cap()
        if self.rows > cap or self.cols > cap:
            raise DimensionCapExceeded(
                f"matrix side {max(self.rows, self.cols)} exceeds cap {cap} "
                f"(override with {_MAX_DIM_ENV})"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RatMatrix":
        row_list = [tuple(as_rational(x) for x in r) for r in rows]
        n_rows = len(row_list)
        n_cols = len(row_list[0]) if row_list else 0
        for i, r in enumerate(row_list):
            if len(r) != n_cols:
                raise DimensionMismatch(
                    f"row {i} has {len(r)} entries, expected {n_cols}"
                )
        flat = tuple(x for r in row_list for x in r)
        return cls(n_rows, n_cols, flat)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        flat = tuple(
            Fraction(1) if i == j else Fraction(0) for i in range(n) for j in range(n)
        )
        return cls(n, n, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    # -- access ------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.shape}")
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> RatVector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> RatVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self[i, j] == self[j, i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic ----------------------------------------------------------

    def transpose(self) -> "RatMatrix":
        flat = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return RatMatrix(self.cols, self.rows, flat)

    def scale(self, c: RationalLike) -> "RatMatrix":
        factor = as_rational(c)
        return RatMatrix(self.rows, self.cols, tuple(factor * x for x in self.entries))

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        flat = tuple(a + b for a, b in zip(self.entries, other.entries))
        return RatMatrix(self.rows, self.cols, flat)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        flat = tuple(self[i, j] for i in rows for j in cols)
        return RatMatrix(len(rows), len(cols), flat)

    def leading_principal(self, k: int) -> "RatMatrix":
        """Top-left k x k submatrix."""
        idx = range(k)
        return self.submatrix(idx, idx)

    def det(self) -> Fraction:
        return det(self)

    def inverse(self) -> "RatMatrix":
        return inverse(self)


# -- operations --------------------------------------------------------------


def transpose(m: RatMatrix) -> RatMatrix:
    return m.transpose()


def scale(c: RationalLike, m: RatMatrix) -> RatMatrix:
    return m.scale(c)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    flat = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            flat.append(sum((arow[k] * b[k, j] for k in range(a.cols)), Fraction(0)))
    return RatMatrix(a.rows, b.cols, tuple(flat))


def mat_vec(m: RatMatrix, v: Sequence[RationalLike]) -> RatVector:
    """Column action m @ v."""
    vec = as_vector(v)
    if m.cols != len(vec):
        raise DimensionMismatch(f"cannot apply {m.shape} to vector of length {len(vec)}")
    return tuple(
        sum((m[i, k] * vec[k] for k in range(m.cols)), Fraction(0))
        for i in range(m.rows)
    )


def vec_mat(v: Sequence[RationalLike], m: RatMatrix) -> RatVector:
    """Row action v @ m."""
    vec = as_vector(v)
    if m.rows != len(vec):
        raise DimensionMismatch(f"cannot apply vector of length {len(vec)} to {m.shape}")
    return tuple(
        sum((vec[k] * m[k, j] for k in range(m.rows)), Fraction(0))
        for j in range(m.cols)
    )


def dot(u: Sequence[RationalLike], v: Sequence[RationalLike]) -> Fraction:
    a = as_vector(u)
    b = as_vector(v)
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _require_square(m: RatMatrix) -> None:
    if not m.is_square:
        raise NonSquare(f"operation needs a square matrix, got {m.shape}")


def det(m: RatMatrix) -> Fraction:
    """Exact determinant via Bareiss fraction-free elimination.

    The matrix is lifted to integers by the common denominator L of all
    entries; Bareiss keeps every intermediate an integer (the divisions are
    exact), and the result is det(L*M) / L^n.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    lift = math.lcm(*(x.denominator for x in m.entries))
    a = [[int(x * lift) for x in m.row(i)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], lift**n)


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse via Gauss-Jordan on [M | I], first-nonzero pivoting."""
    _require_square(m)
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise Singular(f"matrix of shape {m.shape} is singular")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        if pivot != 1:
            aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    flat = tuple(aug[i][n + j] for i in range(n) for j in range(n))
    return RatMatrix(n, n, flat)


def solve_left(v: Sequence[RationalLike], m: RatMatrix) -> RatVector:
    """Exact solution x of the row-vector equation x @ m = v."""
    _require_square(m)
    vec = as_vector(v)
    if len(vec) != m.rows:
        raise DimensionMismatch(
            f"solve_left needs a vector of length {m.rows}, got {len(vec)}"
        )
    return _solve_columns(m.transpose(), vec)


def _solve_columns(m: RatMatrix, b: RatVector) -> RatVector:
    """Solve m @ x = b by exact Gaussian elimination with back substitution."""
    n = m.rows
    if n == 0:
        return ()
    a = [list(m.row(i)) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise Singular(f"matrix of shape {m.shape} is singular")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / a[col][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] - sum((a[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / a[i][i]
    return tuple(x)
