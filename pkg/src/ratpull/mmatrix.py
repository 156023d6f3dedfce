"""Z-matrix recognition and invertible-M-matrix certification.

A Z-matrix (nonpositive off-diagonal entries) is an invertible M-matrix
exactly when any one of a long list of equivalent conditions holds. Three
of them are checked here independently and exactly:

* all leading principal minors are strictly positive,
* the inverse exists and is entrywise nonnegative,
* some entrywise-positive vector x has A @ x entrywise positive.

The equivalence of the three is a theorem, so the verdict is their common
value; if they ever disagree the code raises InternalInconsistency, because
that can only mean an implementation bug. A floating-point spectral-radius
estimate for the decomposition A = s*I - B is attached for diagnostics and
never contributes to the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import ratmat
from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NonSquare,
    NotZPattern,
    Singular,
)
from .ratmat import RatMatrix, RatVector

POWER_ITERATIONS = 200
CONVERGENCE_TOL = 1e-9


@dataclass(frozen=True)
class ZMatrix:
    """A square matrix whose off-diagonal entries are all <= 0."""

    inner: RatMatrix

    @property
    def dimension(self) -> int:
        return self.inner.rows


def as_z_matrix(m: RatMatrix) -> ZMatrix:
    """Wrap m as a ZMatrix, or raise NotZPattern at the violating entry."""
    if not m.is_square:
        raise NonSquare(f"Z-matrix must be square, got {m.shape}")
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j and m[i, j] > 0:
                raise NotZPattern(i, j, m[i, j])
    return ZMatrix(m)


@dataclass(frozen=True)
class SpectralEstimate:
    """Advisory floating estimate for A = s*I - B: the scalar s, a power
    iteration estimate of the spectral radius of B, and whether successive
    quotients settled to within 1e-9."""

    s: float
    rho_hat: float
    converged: bool


@dataclass(frozen=True)
class MMatrixReport:
    """Verdict plus certificates from three independent exact checks.

    verdict True means all three succeeded; False means all three failed.
    The spectral estimate is advisory only.
    """

    verdict: bool
    dimension: int
    minors: tuple[Fraction, ...]
    minors_positive: bool
    inverse_nonneg: bool
    inverse: Optional[RatMatrix]
    certificate_x: Optional[RatVector]
    spectral: Optional[SpectralEstimate]


def check_minors(a: ZMatrix) -> tuple[tuple[Fraction, ...], bool]:
    """All leading principal minors, and whether every one is > 0.

    For symmetric input this is Sylvester's criterion for positive
    definiteness.
    """
    m = a.inner
    minors = tuple(m.leading_principal(k).det() for k in range(1, m.rows + 1))
    return minors, all(d > 0 for d in minors)


def check_inverse_nonneg(a: ZMatrix) -> tuple[bool, Optional[RatMatrix]]:
    """Whether A is invertible with entrywise-nonnegative inverse.

    Singularity yields (False, None), not an error. When the inverse exists
    it is returned either way, so callers can inspect the failing entries.
    """
    try:
        inv = a.inner.inverse()
    except Singular:
        return False, None
    ok = all(x >= 0 for x in inv.entries)
    return ok, inv


def check_certificate(a: ZMatrix) -> Optional[RatVector]:
    """A positive vector x with A @ x positive, when one exists.

    The construction is x = A^-1 @ (1,...,1), which gives A @ x = (1,...,1)
    by definition; x qualifies exactly when it is entrywise positive. For an
    invertible M-matrix this always succeeds (the inverse is nonnegative
    with no zero row); otherwise the construction fails and None is
    returned, consistent with the other checks.
    """
    try:
        inv = a.inner.inverse()
    except Singular:
        return None
    ones = (Fraction(1),) * a.dimension
    x = ratmat.mat_vec(inv, ones)
    if all(entry > 0 for entry in x):
        return x
    return None


def verify_certificate(a: ZMatrix, x: Sequence[ratmat.RationalLike]) -> bool:
    """Independent exact check that x > 0 and A @ x > 0 entrywise."""
    vec = ratmat.as_vector(x)
    if len(vec) != a.dimension:
        raise DimensionMismatch(
            f"certificate length {len(vec)} does not match dimension {a.dimension}"
        )
    if not all(entry > 0 for entry in vec):
        return False
    image = ratmat.mat_vec(a.inner, vec)
    return all(entry > 0 for entry in image)


def decompose(a: ZMatrix, s: Optional[Fraction] = None) -> tuple[Fraction, RatMatrix]:
    """Write A = s*I - B with B >= 0.

    Default s is max(diagonal) when positive, else 1 (the minimal canonical
    choice; any larger s works too and never changes the verdict). An
    explicit s must be at least the default.
    """
    m = a.inner
    n = m.rows
    diag_max = max((m[i, i] for i in range(n)), default=Fraction(0))
    minimal = diag_max if diag_max > 0 else Fraction(1)
    if s is None:
        s = minimal
    else:
        s = ratmat.as_rational(s)
        if s < minimal:
            raise ValueError(
                f"s = {s} leaves B with negative diagonal (needs s >= {minimal})"
            )
    b = RatMatrix(
        n,
        n,
        tuple(
            (s if i == j else Fraction(0)) - m[i, j]
            for i in range(n)
            for j in range(n)
        ),
    )
    return s, b


def spectral_estimate(
    a: ZMatrix, s: Optional[Fraction] = None
) -> SpectralEstimate:
    """Floating power-iteration estimate of rho(B) in A = s*I - B.

    ADVISORY ONLY: 200 iterations from the all-ones vector with sup-norm
    normalization; deterministic and bounded, never part of any verdict.
    """
    s_val, b = decompose(a, s)
    n = b.rows
    if n == 0:
        return SpectralEstimate(float(s_val), 0.0, True)
    bf = [[float(x) for x in b.row(i)] for i in range(n)]
    x = [1.0] * n
    estimate = 0.0
    converged = False
    for _ in range(POWER_ITERATIONS):
        y = [sum(bf[i][k] * x[k] for k in range(n)) for i in range(n)]
        norm = max(abs(v) for v in y)
        if norm == 0.0:
            return SpectralEstimate(float(s_val), 0.0, True)
        previous = estimate
        estimate = norm
        x = [v / norm for v in y]
        if abs(estimate - previous) <= CONVERGENCE_TOL:
            converged = True
            break
    return SpectralEstimate(float(s_val), estimate, converged)


def is_invertible_m_matrix(a: ZMatrix) -> MMatrixReport:
    """Run all three exact checks, assert their agreement, return the report."""
    minors, minors_ok = check_minors(a)
    inv_ok, inv = check_inverse_nonneg(a)
    x = check_certificate(a)
    cert_ok = x is not None and verify_certificate(a, x)
    votes = (minors_ok, inv_ok, cert_ok)
    if len(set(votes)) != 1:
        raise InternalInconsistency(
            f"M-matrix characterizations disagree: minors={minors_ok}, "
            f"inverse_nonneg={inv_ok}, certificate={cert_ok} "
            f"for {a.inner!r}"
        )
    return MMatrixReport(
        verdict=minors_ok,
        dimension=a.dimension,
        minors=minors,
        minors_positive=minors_ok,
        inverse_nonneg=inv_ok,
        inverse=inv,
        certificate_x=x,
        spectral=spectral_estimate(a),
    )
