import json
from fractions import Fraction

import pytest

from ratpull import (
    DivisorInput,
    DualGraph,
    ExampleEntry,
    IntersectionConfig,
    InvalidGraph,
    InvariantViolation,
    NotMMatrix,
    ParseError,
    RatMatrix,
    builtin_ade_graphs,
    builtin_examples,
    chain_graph,
    check_example,
    compute_pullback,
    config_from_dict,
    config_to_dict,
    divisor_from_dict,
    divisor_to_dict,
    get_example,
    graph_from_dict,
    graph_to_config,
    graph_to_dict,
    hirzebruch_jung_chain,
    load_config,
    report_to_dict,
    result_to_dict,
    save_config,
)
from ratpull.configlib import matrix_from_dict


class TestDualGraph:
    def test_a2_transcription(self):
        cfg = graph_to_config(chain_graph([-2, -2]))
        assert cfg.phi == RatMatrix.from_rows([[-2, 1], [1, -2]])
        assert cfg.adjacency == ((False, True), (True, False))
        assert cfg.divisors == cfg.chosen_curves == ("E1", "E2")

    def test_single_vertex(self):
        for n in (2, 5, 9):
            cfg = graph_to_config(chain_graph([-n]))
            assert cfg.phi == RatMatrix.from_rows([[-n]])

    def test_d4_central_row(self):
        cfg = graph_to_config(builtin_ade_graphs()["D4"])
        assert cfg.phi.row(0) == (
            Fraction(-2),
            Fraction(1),
            Fraction(1),
            Fraction(1),
        )
        assert cfg.phi.is_symmetric()

    def test_edge_multiplicity(self):
        g = DualGraph(
            vertices=(("E1", Fraction(-2)), ("E2", Fraction(-3))),
            edges=((0, 1, 2),),
        )
        cfg = graph_to_config(g)
        assert cfg.phi[0, 1] == Fraction(2)

    def test_rejects_nonnegative_self_intersection(self):
        with pytest.raises(InvalidGraph):
            DualGraph(vertices=(("E1", Fraction(1)),), edges=())

    def test_rejects_self_loop(self):
        with pytest.raises(InvalidGraph):
            DualGraph(vertices=(("E1", Fraction(-2)),), edges=((0, 0, 1),))

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InvalidGraph):
            DualGraph(
                vertices=(("E1", Fraction(-2)), ("E2", Fraction(-2))),
                edges=((0, 1, 1), (1, 0, 1)),
            )

    def test_rejects_dangling_edge(self):
        with pytest.raises(InvalidGraph):
            DualGraph(vertices=(("E1", Fraction(-2)),), edges=((0, 1, 1),))

    def test_graph_configs_pass_sign_validation(self):
        from ratpull import validate_signs

        for name, graph in builtin_ade_graphs().items():
            report = validate_signs(graph_to_config(graph))
            assert report.sign_pattern_ok, name
            assert report.connected, name


class TestHirzebruchJung:
    def test_5_2(self):
        g = hirzebruch_jung_chain(5, 2)
        assert [w for _, w in g.vertices] == [Fraction(-3), Fraction(-2)]

    def test_7_3(self):
        g = hirzebruch_jung_chain(7, 3)
        assert [w for _, w in g.vertices] == [
            Fraction(-3),
            Fraction(-2),
            Fraction(-2),
        ]

    def test_continued_fraction_reconstructs(self):
        # [a1,...,ak] must evaluate back to n/q
        for n, q in ((5, 2), (7, 3), (11, 4), (19, 7)):
            g = hirzebruch_jung_chain(n, q)
            coeffs = [-w for _, w in g.vertices]
            value = Fraction(coeffs[-1])
            for a in reversed(coeffs[:-1]):
                value = a - 1 / value
            assert value == Fraction(n, q)

    def test_invalid_parameters(self):
        with pytest.raises(InvalidGraph):
            hirzebruch_jung_chain(2, 2)
        with pytest.raises(InvalidGraph):
            hirzebruch_jung_chain(6, 2)


class TestDocumentRoundTrips:
    def test_config_roundtrip(self):
        entry = get_example("A2")
        doc = config_to_dict(entry.config)
        assert config_from_dict(doc) == entry.config

    def test_config_with_extras_roundtrip(self):
        cfg = get_example("conifold").config
        assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_divisor_roundtrip(self):
        d = DivisorInput(
            lam=(Fraction(1, 2), Fraction(3)),
            cartier_denominator=4,
            extra_lambda=(Fraction(-2, 7),),
        )
        assert divisor_from_dict(divisor_to_dict(d)) == d

    def test_graph_roundtrip(self):
        g = builtin_ade_graphs()["E8"]
        assert graph_from_dict(graph_to_dict(g)) == g

    def test_file_roundtrip(self, tmp_path):
        cfg = get_example("HJ-5-2").config
        path = tmp_path / "hj.json"
        save_config(cfg, path)
        assert load_config(path) == cfg

    def test_rationals_survive_exactly(self):
        cfg = IntersectionConfig(
            divisors=("E1",),
            chosen_curves=("C1",),
            phi=RatMatrix.from_rows([["-355/113"]]),
        )
        assert config_from_dict(config_to_dict(cfg)).phi[0, 0] == Fraction(-355, 113)


class TestParseErrors:
    def base_doc(self):
        return {
            "format_version": "1",
            "divisors": ["E1", "E2"],
            "curves": ["C1", "C2"],
            "phi": [["-2", "1"], ["1", "-2"]],
        }

    def test_wellformed(self):
        config_from_dict(self.base_doc())

    def test_non_square_phi_is_invariant_violation(self):
        doc = self.base_doc()
        doc["phi"] = [["-2", "1", "0"], ["1", "-2", "0"]]
        with pytest.raises(InvariantViolation):
            config_from_dict(doc)

    def test_zero_denominator_rational(self):
        doc = self.base_doc()
        doc["phi"][0][0] = "1/0"
        with pytest.raises(ParseError):
            config_from_dict(doc)

    def test_float_rejected(self):
        doc = self.base_doc()
        doc["phi"][0][0] = -2.0
        with pytest.raises(ParseError):
            config_from_dict(doc)

    def test_missing_field(self):
        doc = self.base_doc()
        del doc["curves"]
        with pytest.raises(ParseError):
            config_from_dict(doc)

    def test_unknown_version(self):
        doc = self.base_doc()
        doc["format_version"] = "99"
        with pytest.raises(ParseError):
            config_from_dict(doc)

    def test_bad_adjacency_type(self):
        doc = self.base_doc()
        doc["adjacency"] = [[0, 1], [1, 0]]
        with pytest.raises(ParseError):
            config_from_dict(doc)

    def test_divisor_requires_lambda(self):
        with pytest.raises(ParseError):
            divisor_from_dict({"format_version": "1"})

    def test_divisor_denominator_must_be_positive(self):
        with pytest.raises(InvariantViolation):
            divisor_from_dict({"lambda": ["1"], "cartier_denominator": 0})

    def test_malformed_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError) as exc:
            load_config(path)
        assert "bad.json" in str(exc.value)

    def test_matrix_document(self):
        m = matrix_from_dict({"format_version": "1", "matrix": [["2", "-1"], ["-3", "4"]]})
        assert m == RatMatrix.from_rows([[2, -1], [-3, 4]])


class TestGoldenLibrary:
    def test_all_examples_pass(self):
        for entry in builtin_examples():
            ok, detail = check_example(entry)
            assert ok, f"{entry.name}: {detail}"

    def test_expected_names_present(self):
        names = {e.name for e in builtin_examples()}
        assert {
            "A1", "A2", "A3", "D4", "E8", "cyclic-1-5", "HJ-5-2",
            "nonsymmetric-demo", "disconnected-pair", "conifold",
        } <= names

    def test_get_example_unknown(self):
        with pytest.raises(KeyError):
            get_example("NOPE")

    def test_entry_invariant_rejects_wrong_coefficients(self):
        entry = get_example("A2")
        with pytest.raises(InvariantViolation):
            ExampleEntry(
                name="broken",
                config=entry.config,
                divisor=entry.divisor,
                expected_coefficients=(Fraction(1), Fraction(1)),
                expected_refusal=None,
                provenance="should not load",
            )

    def test_entry_invariant_requires_exactly_one_expectation(self):
        entry = get_example("A2")
        with pytest.raises(InvariantViolation):
            ExampleEntry(
                name="broken",
                config=entry.config,
                divisor=entry.divisor,
                expected_coefficients=None,
                expected_refusal=None,
                provenance="neither",
            )

    def test_check_example_detects_wrong_refusal(self):
        bad = ExampleEntry(
            name="mislabeled",
            config=get_example("A2").config,
            divisor=get_example("A2").divisor,
            expected_coefficients=None,
            expected_refusal=NotMMatrix,
            provenance="A2 certifies fine, so this must fail",
        )
        ok, detail = check_example(bad)
        assert not ok
        assert "got a result" in detail


class TestReportSerialization:
    def test_result_document_uses_strings(self):
        entry = get_example("A2")
        result = compute_pullback(entry.config, entry.divisor)
        doc = result_to_dict(result)
        assert doc["coefficients"] == ["2/3", "1/3"]
        assert doc["m_integers"] == [2, 1]
        assert doc["projection_residuals"] == ["0", "0"]
        assert doc["mmatrix_report"]["minors"] == ["2", "3"]
        json.dumps(doc)  # must be JSON-serializable as-is

    def test_report_document(self):
        entry = get_example("A2")
        result = compute_pullback(entry.config, entry.divisor)
        doc = report_to_dict(result.mreport)
        assert doc["verdict"] is True
        assert doc["inverse"] == [["2/3", "1/3"], ["1/3", "2/3"]]
        assert doc["certificate_x"] == ["1", "1"]
        assert isinstance(doc["spectral_estimate"]["rho_hat"], float)
        json.dumps(doc)
