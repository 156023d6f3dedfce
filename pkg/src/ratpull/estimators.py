"""Estimator-style API: fit an intersection configuration, transform lambdas.

The solver is naturally fit/transform shaped: fitting validates the sign
pattern, certifies A = -phi^T as an invertible M-matrix and stores the exact
inverse of -phi; transforming maps batches of lambda vectors to coefficient
vectors through that fixed linear operator. The API follows the scikit-learn
conventions (fit returns self, fitted attributes end in an underscore,
get_params/set_params, NotFittedError before fit) without depending on
scikit-learn itself, whose array validation would coerce the exact
rationals to floats.

Unlike a typical transformer, fit and transform consume different kinds of
input: fit takes the configuration (the operator's defining data), while
transform takes rows of intersection numbers lambda.
"""

from __future__ import annotations

import inspect
from typing import Any, Optional, Sequence, Union

from . import configlib, pullback as pb, ratmat
from .errors import (
    NegativeLambda,
    NotFittedError,
    NotMMatrix,
    NotNegativeDefinite,
    NotSymmetric,
)
from .pullback import DivisorInput, IntersectionConfig, PullbackResult
from .ratmat import RatVector

ConfigLike = Union[IntersectionConfig, dict]


def check_is_fitted(estimator: Any, attribute: str = "config_") -> None:
    """Raise NotFittedError unless the fitted attribute is present."""
    if getattr(estimator, attribute, None) is None:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )


def check_config(X: ConfigLike) -> IntersectionConfig:
    """Coerce a configuration argument (object or parsed document)."""
    if isinstance(X, IntersectionConfig):
        return X
    if isinstance(X, dict):
        return configlib.config_from_dict(X)
    raise TypeError(
        f"expected IntersectionConfig or document dict, got {type(X).__name__}"
    )


def check_lambda_batch(
    X: Sequence[Sequence[ratmat.RationalLike]], r: int
) -> list[RatVector]:
    """Coerce a batch of lambda rows, each of length r."""
    return [ratmat.as_vector(row, length=r) for row in X]


class BaseEstimator:
    """Parameter handling in the scikit-learn style.

    Constructor arguments are the estimator's parameters; they are stored
    verbatim under their own names, reported by get_params and updated by
    set_params.
    """

    @classmethod
    def _param_names(cls) -> list[str]:
        signature = inspect.signature(cls.__init__)
        return [
            name
            for name, p in signature.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep: bool = True) -> dict[str, Any]:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params: Any) -> "BaseEstimator":
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class RationalPullback(BaseEstimator):
    """Exact rational pullback as a fitted linear operator.

    fit(config) validates and certifies the configuration and stores the
    exact inverse of -phi; transform(rows) maps each lambda row to its
    coefficient vector; compute(divisor) returns the fully verified
    PullbackResult for a single divisor input.

    Fitted attributes: config_, validation_, report_, r_, neg_phi_inverse_.
    """

    config_: Optional[IntersectionConfig]

    def __init__(
        self,
        allow_signed_lambda: bool = False,
        allow_disconnected: bool = False,
    ):
        self.allow_signed_lambda = allow_signed_lambda
        self.allow_disconnected = allow_disconnected
        self.config_ = None

    def fit(self, X: ConfigLike, y: Any = None) -> "RationalPullback":
        """Validate, certify and store the configuration.

        Raises the named refusal (SignViolation, DisconnectedConfiguration,
        NotMMatrix, ...) when the configuration falls outside the theorem.
        """
        cfg = check_config(X)
        validation = pb.validate_signs(
            cfg, allow_disconnected=self.allow_disconnected
        )
        report = pb.certify(cfg)
        if not report.verdict:
            raise NotMMatrix(
                "A = -phi^T is not an invertible M-matrix "
                f"(leading minors {tuple(map(str, report.minors))})"
            )
        self.config_ = cfg
        self.validation_ = validation
        self.report_ = report
        self.r_ = cfg.r
        self.neg_phi_inverse_ = (-cfg.phi).inverse()
        return self

    def transform(
        self, X: Sequence[Sequence[ratmat.RationalLike]]
    ) -> list[RatVector]:
        """Map lambda rows to exact coefficient vectors m with m @ (-phi) = lambda."""
        check_is_fitted(self)
        rows = check_lambda_batch(X, self.r_)
        out = []
        for row in rows:
            if not self.allow_signed_lambda:
                for j, value in enumerate(row):
                    if value < 0:
                        raise NegativeLambda(j, value)
            out.append(ratmat.vec_mat(row, self.neg_phi_inverse_))
        return out

    def compute(self, d: Union[DivisorInput, dict]) -> PullbackResult:
        """Full verified pullback for one divisor input."""
        check_is_fitted(self)
        if isinstance(d, dict):
            d = configlib.divisor_from_dict(d)
        return pb.compute_pullback(
            self.config_,
            d,
            allow_signed_lambda=self.allow_signed_lambda,
            allow_disconnected=self.allow_disconnected,
            precertified=self.report_,
        )


class MumfordSurfacePullback(RationalPullback):
    """The symmetric surface specialization.

    fit accepts a DualGraph as well as a configuration, requires phi
    symmetric and negative-definite, and compute() records the agreement of
    the symmetric and generic solve paths.
    """

    def fit(
        self, X: Union[ConfigLike, configlib.DualGraph], y: Any = None
    ) -> "MumfordSurfacePullback":
        if isinstance(X, configlib.DualGraph):
            cfg = configlib.graph_to_config(X)
        else:
            cfg = check_config(X)
        if not cfg.phi.is_symmetric():
            raise NotSymmetric("surface path needs a symmetric intersection matrix")
        neg = -cfg.phi
        minors = [neg.leading_principal(k).det() for k in range(1, cfg.r + 1)]
        if not all(m > 0 for m in minors):
            raise NotNegativeDefinite(
                "phi is not negative-definite "
                f"(minors of -phi: {tuple(map(str, minors))})"
            )
        return super().fit(cfg)

    def compute(self, d: Union[DivisorInput, dict]) -> PullbackResult:
        check_is_fitted(self)
        if isinstance(d, dict):
            d = configlib.divisor_from_dict(d)
        return pb.mumford_surface_pullback(
            self.config_,
            d,
            allow_signed_lambda=self.allow_signed_lambda,
            allow_disconnected=self.allow_disconnected,
        )
