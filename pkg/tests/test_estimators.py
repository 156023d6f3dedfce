from fractions import Fraction

import pytest

from ratpull import (
    DivisorInput,
    MumfordSurfacePullback,
    NegativeLambda,
    NotFittedError,
    NotMMatrix,
    NotSymmetric,
    RationalPullback,
    builtin_ade_graphs,
    compute_pullback,
    config_to_dict,
    get_example,
    graph_to_config,
)


class TestParams:
    def test_get_params_defaults(self):
        est = RationalPullback()
        assert est.get_params() == {
            "allow_signed_lambda": False,
            "allow_disconnected": False,
        }

    def test_set_params_roundtrip(self):
        est = RationalPullback().set_params(allow_signed_lambda=True)
        assert est.get_params()["allow_signed_lambda"] is True

    def test_set_params_rejects_unknown(self):
        with pytest.raises(ValueError):
            RationalPullback().set_params(bogus=1)

    def test_repr(self):
        text = repr(RationalPullback(allow_signed_lambda=True))
        assert "RationalPullback" in text
        assert "allow_signed_lambda=True" in text


class TestRationalPullback:
    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            RationalPullback().transform([[1, 0]])

    def test_fit_returns_self_and_sets_attributes(self):
        entry = get_example("A2")
        est = RationalPullback()
        assert est.fit(entry.config) is est
        assert est.r_ == 2
        assert est.report_.verdict
        assert est.config_ is entry.config
        assert est.validation_.sign_pattern_ok

    def test_fit_accepts_document_dict(self):
        entry = get_example("A2")
        est = RationalPullback().fit(config_to_dict(entry.config))
        assert est.r_ == 2

    def test_fit_refuses_non_m_matrix(self):
        entry = get_example("A2")
        doc = config_to_dict(entry.config)
        doc["phi"] = [["-1", "2"], ["2", "-1"]]
        with pytest.raises(NotMMatrix):
            RationalPullback().fit(doc)

    def test_transform_batch(self):
        entry = get_example("A2")
        est = RationalPullback().fit(entry.config)
        out = est.transform([[1, 0], [0, 1], [1, 1]])
        assert out == [
            (Fraction(2, 3), Fraction(1, 3)),
            (Fraction(1, 3), Fraction(2, 3)),
            (Fraction(1), Fraction(1)),
        ]

    def test_transform_matches_compute_pullback(self):
        entry = get_example("E8")
        est = RationalPullback().fit(entry.config)
        lam = (Fraction(1), Fraction(2), Fraction(0), Fraction(0),
               Fraction(1), Fraction(0), Fraction(3), Fraction(1, 2))
        [coeffs] = est.transform([lam])
        direct = compute_pullback(entry.config, DivisorInput(lam=lam))
        assert coeffs == direct.coefficients

    def test_transform_rejects_negative_lambda(self):
        est = RationalPullback().fit(get_example("A2").config)
        with pytest.raises(NegativeLambda):
            est.transform([[-1, 0]])

    def test_signed_lambda_parameter(self):
        est = RationalPullback(allow_signed_lambda=True).fit(get_example("A2").config)
        [coeffs] = est.transform([[-1, 0]])
        assert coeffs == (Fraction(-2, 3), Fraction(-1, 3))

    def test_compute_full_result(self):
        entry = get_example("HJ-5-2")
        est = RationalPullback().fit(entry.config)
        result = est.compute(entry.divisor)
        assert result.coefficients == entry.expected_coefficients
        assert result.projection_residuals == (Fraction(0), Fraction(0))

    def test_compute_accepts_document(self):
        est = RationalPullback().fit(get_example("A2").config)
        result = est.compute({"format_version": "1", "lambda": ["1", "0"]})
        assert result.coefficients == (Fraction(2, 3), Fraction(1, 3))


class TestMumfordSurfacePullback:
    def test_fit_on_graph(self):
        est = MumfordSurfacePullback().fit(builtin_ade_graphs()["A3"])
        [coeffs] = est.transform([[1, 0, 0]])
        assert coeffs == (Fraction(3, 4), Fraction(1, 2), Fraction(1, 4))

    def test_compute_records_path_agreement(self):
        est = MumfordSurfacePullback().fit(builtin_ade_graphs()["D4"])
        result = est.compute(DivisorInput(lam=(1, 0, 0, 0)))
        assert result.path_agreement is True
        assert result.coefficients == (
            Fraction(2),
            Fraction(1),
            Fraction(1),
            Fraction(1),
        )

    def test_rejects_non_symmetric_config(self):
        with pytest.raises(NotSymmetric):
            MumfordSurfacePullback().fit(get_example("nonsymmetric-demo").config)

    def test_generic_estimator_accepts_non_symmetric(self):
        est = RationalPullback().fit(get_example("nonsymmetric-demo").config)
        [coeffs] = est.transform([[1, 1]])
        assert coeffs == (Fraction(1), Fraction(1))
