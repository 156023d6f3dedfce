"""Rational pullback of Weil divisors from intersection data.

The pipeline: validate the sign pattern of the intersection matrix phi
(negative diagonal, nonnegative off-diagonal, zeros exactly at disjoint
pairs), certify that A = -phi^T is an invertible M-matrix, then solve the
row-vector system m @ (-phi) = lambda exactly. The solution is the unique
coefficient vector making the pulled-back divisor numerically trivial on
every chosen curve; nonnegativity of lambda forces nonnegativity of the
coefficients, so effectivity is preserved.

Configurations are trusted to describe a morphism whose exceptional locus
is the closed fiber and equidimensional; that hypothesis is geometric and
cannot be witnessed by intersection numbers alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import mmatrix, ratmat
from .errors import (
    AdjacencyViolation,
    DimensionMismatch,
    DisconnectedConfiguration,
    InternalInconsistency,
    InvariantViolation,
    NegativeLambda,
    NoRationalPullback,
    NotMMatrix,
    NotNegativeDefinite,
    NotSymmetric,
    SignViolation,
)
from .mmatrix import MMatrixReport
from .ratmat import RatMatrix, RatVector


@dataclass(frozen=True)
class ExtraCurve:
    """An additional vertical curve supplied for consistency checks.

    host is the index of the exceptional divisor containing the curve, or
    None when no exceptional divisor exists (the r = 0 case). row holds the
    intersection numbers (E_i . C') for all i.
    """

    name: str
    row: RatVector
    host: Optional[int] = None


@dataclass(frozen=True)
class IntersectionConfig:
    """Exceptional divisors, chosen curves, and the matrix phi[i][j] = (E_i . C_j).

    Index convention: i is the divisor index, j the curve index, so column j
    collects the pairings of the chosen curve C_j against every divisor.
    """

    divisors: tuple[str, ...]
    chosen_curves: tuple[str, ...]
    phi: RatMatrix
    extra_curves: tuple[ExtraCurve, ...] = ()
    adjacency: Optional[tuple[tuple[bool, ...], ...]] = None

    def __post_init__(self):
        r = len(self.divisors)
        if len(self.chosen_curves) != r:
            raise InvariantViolation(
                f"{r} divisors but {len(self.chosen_curves)} chosen curves"
            )
        if self.phi.shape != (r, r):
            raise InvariantViolation(
                f"phi must be {r}x{r} to match the divisor list, got {self.phi.shape}"
            )
        for curve in self.extra_curves:
            if len(curve.row) != r:
                raise InvariantViolation(
                    f"extra curve {curve.name!r} has row of length "
                    f"{len(curve.row)}, expected {r}"
                )
            if curve.host is not None and not (0 <= curve.host < r):
                raise InvariantViolation(
                    f"extra curve {curve.name!r} host index {curve.host} out of range"
                )
        if self.adjacency is not None:
            adj = self.adjacency
            if len(adj) != r or any(len(row) != r for row in adj):
                raise InvariantViolation(f"adjacency must be {r}x{r}")
            for i in range(r):
                for j in range(r):
                    if adj[i][j] != adj[j][i]:
                        raise InvariantViolation(
                            f"adjacency not symmetric at ({i}, {j})"
                        )
                    if i != j and not adj[i][j] and self.phi[i, j] != 0:
                        raise InvariantViolation(
                            f"divisors {i} and {j} declared disjoint but "
                            f"phi[{i}][{j}] = {self.phi[i, j]} is nonzero"
                        )

    @property
    def r(self) -> int:
        return len(self.divisors)


@dataclass(frozen=True)
class DivisorInput:
    """The strict transform's data: lam[j] = (D' . C_j), the Cartier
    denominator n' (n'D' is Cartier), and optional pairings against the
    configuration's extra curves."""

    lam: RatVector
    cartier_denominator: int = 1
    extra_lambda: Optional[RatVector] = None

    def __post_init__(self):
        if not isinstance(self.cartier_denominator, int) or isinstance(
            self.cartier_denominator, bool
        ):
            raise InvariantViolation("cartier_denominator must be an integer")
        if self.cartier_denominator < 1:
            raise InvariantViolation(
                f"cartier_denominator must be >= 1, got {self.cartier_denominator}"
            )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_signs on a configuration that passed."""

    r: int
    sign_pattern_ok: bool
    adjacency_checked: bool
    connected: Optional[bool]
    components: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PullbackResult:
    """Exact pullback coefficients plus the full verification transcript.

    coefficients[i] = m_i / n in lowest terms; n is the lcm of the
    denominators and m_integers the resulting integer numerators.
    full_coefficients divides by the Cartier denominator n', giving the
    multiplier of E_i in f*(D) = D' + sum (m_i / (n n')) E_i.
    """

    coefficients: RatVector
    n: int
    m_integers: tuple[int, ...]
    cartier_denominator: int
    full_coefficients: RatVector
    mreport: MMatrixReport
    projection_residuals: RatVector
    extra_residuals: tuple[tuple[str, Fraction], ...]
    effectivity: bool
    path_agreement: Optional[bool] = None

    @property
    def extra_consistent(self) -> bool:
        return all(res == 0 for _, res in self.extra_residuals)


class SmallResolutionVerdict(enum.Enum):
    NO_RATIONAL_PULLBACK = "no-rational-pullback"
    TRIVIALLY_ADMITS = "trivially-admits"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class SmallResolutionCheck:
    verdict: SmallResolutionVerdict
    witness: Optional[str] = None


def _adjacency_components(
    adjacency: tuple[tuple[bool, ...], ...], r: int
) -> tuple[tuple[int, ...], ...]:
    seen = [False] * r
    components = []
    for start in range(r):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(r):
                if w != v and adjacency[v][w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        components.append(tuple(sorted(comp)))
    return tuple(components)


def validate_signs(
    cfg: IntersectionConfig, allow_disconnected: bool = False
) -> ValidationReport:
    """Check the sign pattern of phi and, when adjacency is declared, the
    zero-iff-disjoint rule and connectivity.

    Diagonal entries must be strictly negative and off-diagonal entries
    nonnegative; when adjacency is present, an off-diagonal entry is zero
    exactly when the divisors are disjoint, and the configuration must be
    connected (the construction assumes connected fibers). Raises on
    failure, returns a report on success.
    """
    phi = cfg.phi
    r = cfg.r
    for i in range(r):
        for j in range(r):
            entry = phi[i, j]
            if i == j:
                if entry >= 0:
                    raise SignViolation(i, j, entry)
            elif entry < 0:
                raise SignViolation(i, j, entry)
    connected: Optional[bool] = None
    components: tuple[tuple[int, ...], ...] = ()
    if cfg.adjacency is not None:
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                if cfg.adjacency[i][j] and phi[i, j] == 0:
                    raise AdjacencyViolation(
                        i, j, "divisors declared adjacent but the pairing is zero"
                    )
                if not cfg.adjacency[i][j] and phi[i, j] != 0:
                    raise AdjacencyViolation(
                        i, j, "divisors declared disjoint but the pairing is nonzero"
                    )
        components = _adjacency_components(cfg.adjacency, r)
        connected = len(components) <= 1
        if not connected and not allow_disconnected:
            raise DisconnectedConfiguration(components)
    return ValidationReport(
        r=r,
        sign_pattern_ok=True,
        adjacency_checked=cfg.adjacency is not None,
        connected=connected,
        components=components,
    )


def negated_transpose(phi: RatMatrix) -> RatMatrix:
    """The matrix A = -phi^T that the M-matrix theory applies to."""
    return -phi.transpose()


def certify(cfg: IntersectionConfig) -> MMatrixReport:
    """Certify A = -phi^T as an invertible M-matrix.

    A verdict of False means the configuration contradicts the theorem's
    hypotheses; compute_pullback refuses such configurations.
    """
    a = mmatrix.as_z_matrix(negated_transpose(cfg.phi))
    return mmatrix.is_invertible_m_matrix(a)


def _solve_blockwise(
    phi: RatMatrix,
    lam: RatVector,
    components: Sequence[tuple[int, ...]],
) -> RatVector:
    # Zero-iff-disjoint makes phi block-diagonal across components, so the
    # per-block solves compose to the global solution.
    out: list[Optional[Fraction]] = [None] * phi.rows
    for comp in components:
        sub_phi = phi.submatrix(comp, comp)
        sub_lam = tuple(lam[j] for j in comp)
        sub_m = ratmat.solve_left(sub_lam, -sub_phi)
        for idx, value in zip(comp, sub_m):
            out[idx] = value
    assert all(v is not None for v in out)
    return tuple(out)  # type: ignore[arg-type]


def compute_pullback(
    cfg: IntersectionConfig,
    d: DivisorInput,
    allow_signed_lambda: bool = False,
    allow_disconnected: bool = False,
    precertified: Optional[MMatrixReport] = None,
) -> PullbackResult:
    """Solve m @ (-phi) = lambda exactly and verify every promised contract.

    Refuses (never approximates) when the configuration is uncertified:
    sign violations, disconnectedness, failed M-matrix certification, or
    negative lambda entries each raise their named error. With
    allow_disconnected, each connected component is solved independently;
    with allow_signed_lambda, negative entries are admitted and the
    effectivity guarantee is suspended.
    """
    r = cfg.r
    lam = ratmat.as_vector(d.lam)
    if len(lam) != r:
        raise DimensionMismatch(f"lambda has length {len(lam)}, expected {r}")
    extra_lambda = None
    if d.extra_lambda is not None:
        extra_lambda = ratmat.as_vector(d.extra_lambda)
        if len(extra_lambda) != len(cfg.extra_curves):
            raise DimensionMismatch(
                f"extra_lambda has length {len(extra_lambda)} but the "
                f"configuration declares {len(cfg.extra_curves)} extra curves"
            )

    if r == 0:
        pairs = []
        if extra_lambda is not None:
            pairs = [(c.name, v) for c, v in zip(cfg.extra_curves, extra_lambda)]
        check = detect_small_resolution(cfg, pairs)
        if check.verdict is SmallResolutionVerdict.NO_RATIONAL_PULLBACK:
            raise NoRationalPullback(check.witness)

    report_meta = validate_signs(cfg, allow_disconnected=allow_disconnected)
    report = precertified if precertified is not None else certify(cfg)
    if not report.verdict:
        raise NotMMatrix(
            "A = -phi^T is not an invertible M-matrix "
            f"(leading minors {tuple(map(str, report.minors))})"
        )

    if not allow_signed_lambda:
        for j, value in enumerate(lam):
            if value < 0:
                raise NegativeLambda(j, value)

    if (
        allow_disconnected
        and report_meta.connected is False
        and len(report_meta.components) > 1
    ):
        coefficients = _solve_blockwise(cfg.phi, lam, report_meta.components)
    else:
        coefficients = ratmat.solve_left(lam, -cfg.phi)

    n = math.lcm(*(c.denominator for c in coefficients)) if coefficients else 1
    m_integers = tuple(int(c * n) for c in coefficients)
    residuals = tuple(
        lam[j] + sum((coefficients[i] * cfg.phi[i, j] for i in range(r)), Fraction(0))
        for j in range(r)
    )
    if any(res != 0 for res in residuals):
        raise InternalInconsistency(
            f"solver produced nonzero projection residuals {residuals}"
        )
    extra_residuals: tuple[tuple[str, Fraction], ...] = ()
    if extra_lambda is not None:
        extra_residuals = tuple(
            (
                curve.name,
                value
                + sum(
                    (coefficients[i] * curve.row[i] for i in range(r)), Fraction(0)
                ),
            )
            for curve, value in zip(cfg.extra_curves, extra_lambda)
        )
    return PullbackResult(
        coefficients=coefficients,
        n=n,
        m_integers=m_integers,
        cartier_denominator=d.cartier_denominator,
        full_coefficients=tuple(c / d.cartier_denominator for c in coefficients),
        mreport=report,
        projection_residuals=residuals,
        extra_residuals=extra_residuals,
        effectivity=all(c >= 0 for c in coefficients),
    )


def verify_on_curve(
    cfg: IntersectionConfig,
    result: PullbackResult,
    curve_row: Sequence[ratmat.RationalLike],
    curve_lambda: ratmat.RationalLike,
) -> Fraction:
    """Residual of the pullback on one further vertical curve.

    Zero means the pulled-back divisor is numerically trivial on the curve,
    as the projection formula requires of every vertical curve.
    """
    row = ratmat.as_vector(curve_row, length=cfg.r)
    value = ratmat.as_rational(curve_lambda)
    return value + sum(
        (c * x for c, x in zip(result.coefficients, row)), Fraction(0)
    )


def check_curve_ratio(
    cfg: IntersectionConfig,
    j: int,
    curve_row: Sequence[ratmat.RationalLike],
) -> Optional[Fraction]:
    """The positive ratio mu with curve_row = mu * (row of the chosen curve C_j).

    The chosen curve's row is column j of phi, i.e. the pairings (E_i . C_j).
    Returns None when no positive proportionality exists, which flags data
    inconsistent with the Picard-number-one hypothesis.
    """
    if not (0 <= j < cfg.r):
        raise DimensionMismatch(f"divisor index {j} out of range for r = {cfg.r}")
    row = ratmat.as_vector(curve_row, length=cfg.r)
    chosen = cfg.phi.col(j)
    pivot = next((i for i in range(cfg.r) if chosen[i] != 0), None)
    if pivot is None:
        return None
    mu = row[pivot] / chosen[pivot]
    if mu <= 0:
        return None
    if any(row[i] != mu * chosen[i] for i in range(cfg.r)):
        return None
    return mu


def mumford_surface_pullback(
    cfg: IntersectionConfig,
    d: DivisorInput,
    allow_signed_lambda: bool = False,
    allow_disconnected: bool = False,
) -> PullbackResult:
    """The symmetric surface case: phi[i][j] = (E_i . E_j), curves being the
    divisors themselves.

    Requires phi symmetric and negative-definite (Sylvester on -phi). The
    solve is identical to compute_pullback; the result additionally records
    that an independent symmetric-path solve produced the same coefficients.
    """
    phi = cfg.phi
    if not phi.is_symmetric():
        raise NotSymmetric(f"surface path needs a symmetric matrix, got {phi!r}")
    neg = -phi
    minors = [neg.leading_principal(k).det() for k in range(1, phi.rows + 1)]
    if not all(m > 0 for m in minors):
        raise NotNegativeDefinite(
            f"phi is not negative-definite (minors of -phi: {tuple(map(str, minors))})"
        )
    result = compute_pullback(
        cfg,
        d,
        allow_signed_lambda=allow_signed_lambda,
        allow_disconnected=allow_disconnected,
    )
    # Independent route: apply the Gauss-Jordan inverse of -phi columnwise,
    # valid without transposition because phi is symmetric.
    symmetric_m = ratmat.mat_vec(neg.inverse(), ratmat.as_vector(d.lam))
    if symmetric_m != result.coefficients:
        raise InternalInconsistency(
            "symmetric and generic solve paths disagree: "
            f"{symmetric_m} vs {result.coefficients}"
        )
    return PullbackResult(
        coefficients=result.coefficients,
        n=result.n,
        m_integers=result.m_integers,
        cartier_denominator=result.cartier_denominator,
        full_coefficients=result.full_coefficients,
        mreport=result.mreport,
        projection_residuals=result.projection_residuals,
        extra_residuals=result.extra_residuals,
        effectivity=result.effectivity,
        path_agreement=True,
    )


def detect_small_resolution(
    cfg: IntersectionConfig,
    curves_with_lambda: Sequence[tuple[str, ratmat.RationalLike]],
) -> SmallResolutionCheck:
    """Detect the small-resolution obstruction for r = 0 configurations.

    With no exceptional divisor there is nothing to correct with, so a
    vertical curve pairing nontrivially against the divisor class defeats
    any rational pullback; if every supplied pairing vanishes the strict
    transform itself is the pullback. For r > 0 the question is deferred to
    compute_pullback.
    """
    if cfg.r > 0:
        return SmallResolutionCheck(SmallResolutionVerdict.NOT_APPLICABLE)
    for name, value in curves_with_lambda:
        if ratmat.as_rational(value) != 0:
            return SmallResolutionCheck(
                SmallResolutionVerdict.NO_RATIONAL_PULLBACK, witness=name
            )
    return SmallResolutionCheck(SmallResolutionVerdict.TRIVIALLY_ADMITS)


def uniqueness_probe(
    cfg: IntersectionConfig,
    d: DivisorInput,
    result: PullbackResult,
    deltas: Sequence[ratmat.RationalLike] = (Fraction(1), Fraction(1, 7)),
) -> bool:
    """Check that perturbing any single coefficient breaks a residual.

    The coefficients are the only fractions satisfying the projection
    equations, so every perturbation must make some residual nonzero.
    Returns True when that holds for every index and every delta.
    """
    lam = ratmat.as_vector(d.lam, length=cfg.r)
    for i in range(cfg.r):
        for delta in deltas:
            step = ratmat.as_rational(delta)
            if step == 0:
                raise ValueError("perturbation delta must be nonzero")
            perturbed = list(result.coefficients)
            perturbed[i] += step
            residuals = [
                lam[j]
                + sum(
                    (perturbed[k] * cfg.phi[k, j] for k in range(cfg.r)), Fraction(0)
                )
                for j in range(cfg.r)
            ]
            if all(res == 0 for res in residuals):
                return False
    return True
