"""Document I/O, dual-graph construction, and the golden example library.

Documents are JSON with every rational carried as a string "p/q" (or "p");
bare integers are accepted on input since they are exact, floats never are.
Top-level layout for a configuration document:

    {
      "format_version": "1",
      "divisors": ["E1", "E2"],
      "curves": ["C1", "C2"],
      "phi": [["-2", "1"], ["1", "-2"]],
      "adjacency": [[false, true], [true, false]],
      "extra_curves": [{"name": "C'", "host": 0, "row": ["-4", "2"]}]
    }

adjacency and extra_curves are optional. Divisor documents carry "lambda",
optional "extra_lambda", and "cartier_denominator" (default 1); dual-graph
documents carry "vertices" (label + self_intersection) and "edges"
([i, j, multiplicity]).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from . import pullback as pb
from .errors import (
    InvalidGraph,
    InvariantViolation,
    ParseError,
    RatpullError,
    Refusal,
)
from .mmatrix import MMatrixReport
from .ratmat import RatMatrix, RatVector, as_rational, format_rational
from .pullback import DivisorInput, ExtraCurve, IntersectionConfig

FORMAT_VERSION = "1"


# -- dual graphs ---------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Vertices are exceptional curves weighted by self-intersection (< 0);
    edges carry pairwise intersection multiplicities."""

    vertices: tuple[tuple[str, Fraction], ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        for label, weight in self.vertices:
            if weight >= 0:
                raise InvalidGraph(
                    f"vertex {label!r} has self-intersection {weight} >= 0"
                )
        seen: set[tuple[int, int]] = set()
        for i, j, mult in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidGraph(f"edge ({i}, {j}) references a missing vertex")
            if i == j:
                raise InvalidGraph(f"self-loop at vertex {i}")
            if mult < 1:
                raise InvalidGraph(f"edge ({i}, {j}) has multiplicity {mult} < 1")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InvalidGraph(f"duplicate edge between {i} and {j}")
            seen.add(key)


def graph_to_config(g: DualGraph) -> IntersectionConfig:
    """Symmetric surface configuration: phi[i][j] = (E_i . E_j), the chosen
    curves being the divisors themselves."""
    n = len(g.vertices)
    entries = [[Fraction(0)] * n for _ in range(n)]
    adjacency = [[False] * n for _ in range(n)]
    for i, (_, weight) in enumerate(g.vertices):
        entries[i][i] = weight
    for i, j, mult in g.edges:
        entries[i][j] = Fraction(mult)
        entries[j][i] = Fraction(mult)
        adjacency[i][j] = adjacency[j][i] = True
    labels = tuple(label for label, _ in g.vertices)
    return IntersectionConfig(
        divisors=labels,
        chosen_curves=labels,
        phi=RatMatrix.from_rows(entries),
        adjacency=tuple(tuple(row) for row in adjacency),
    )


def chain_graph(self_intersections: Sequence[Union[int, Fraction, str]],
                prefix: str = "E") -> DualGraph:
    """A chain E1 - E2 - ... - Er with the given self-intersections."""
    weights = [as_rational(w) for w in self_intersections]
    vertices = tuple((f"{prefix}{i + 1}", w) for i, w in enumerate(weights))
    edges = tuple((i, i + 1, 1) for i in range(len(weights) - 1))
    return DualGraph(vertices, edges)


def hirzebruch_jung_chain(n: int, q: int) -> DualGraph:
    """Resolution chain of the cyclic quotient singularity of type (n, q).

    Self-intersections are the negatives of the Hirzebruch-Jung continued
    fraction n/q = a1 - 1/(a2 - 1/(...)), each a_k >= 2.
    """
    if n <= q or q < 1:
        raise InvalidGraph(f"need n > q >= 1, got ({n}, {q})")
    if math.gcd(n, q) != 1:
        raise InvalidGraph(f"need gcd(n, q) = 1, got ({n}, {q})")
    coeffs = []
    while q > 0:
        a = -(-n // q)  # ceil(n / q)
        coeffs.append(a)
        n, q = q, a * q - n
    return chain_graph([-a for a in coeffs])


def builtin_ade_graphs() -> dict[str, DualGraph]:
    """The ADE dual graphs shipped with the golden examples (all -2 curves)."""
    graphs = {
        "A1": chain_graph([-2]),
        "A2": chain_graph([-2, -2]),
        "A3": chain_graph([-2, -2, -2]),
        # D4: central vertex first, then the three leaves.
        "D4": DualGraph(
            vertices=tuple((f"E{i + 1}", Fraction(-2)) for i in range(4)),
            edges=((0, 1, 1), (0, 2, 1), (0, 3, 1)),
        ),
        # E8: chain E1..E7 with E8 attached to E5.
        "E8": DualGraph(
            vertices=tuple((f"E{i + 1}", Fraction(-2)) for i in range(8)),
            edges=((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1),
                   (5, 6, 1), (4, 7, 1)),
        ),
    }
    return graphs


# -- document parsing ----------------------------------------------------------


def _expect_dict(doc: Any, what: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{what} document must be an object, got {type(doc).__name__}")
    return doc


def _check_version(doc: dict) -> None:
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r} (expected '1')")


def _rational(value: Any, where: str) -> Fraction:
    try:
        return as_rational(value)
    except ParseError as exc:
        raise ParseError(str(exc), location=where)


def _rational_list(values: Any, where: str) -> RatVector:
    if not isinstance(values, list):
        raise ParseError("expected a list of rationals", location=where)
    return tuple(_rational(v, f"{where}[{k}]") for k, v in enumerate(values))


def _string_list(values: Any, where: str) -> tuple[str, ...]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise ParseError("expected a list of strings", location=where)
    return tuple(values)


def _matrix(values: Any, where: str) -> RatMatrix:
    if not isinstance(values, list):
        raise ParseError("expected a list of rows", location=where)
    rows = [_rational_list(row, f"{where}[{k}]") for k, row in enumerate(values)]
    return RatMatrix.from_rows(rows)


def config_from_dict(doc: Any) -> IntersectionConfig:
    doc = _expect_dict(doc, "configuration")
    _check_version(doc)
    for key in ("divisors", "curves", "phi"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    divisors = _string_list(doc["divisors"], "divisors")
    curves = _string_list(doc["curves"], "curves")
    phi = _matrix(doc["phi"], "phi")
    adjacency = None
    if doc.get("adjacency") is not None:
        raw = doc["adjacency"]
        if not isinstance(raw, list) or not all(
            isinstance(row, list) and all(isinstance(x, bool) for x in row)
            for row in raw
        ):
            raise ParseError("adjacency must be a matrix of booleans",
                             location="adjacency")
        adjacency = tuple(tuple(row) for row in raw)
    extra_curves: tuple[ExtraCurve, ...] = ()
    if doc.get("extra_curves") is not None:
        raw = doc["extra_curves"]
        if not isinstance(raw, list):
            raise ParseError("extra_curves must be a list", location="extra_curves")
        parsed = []
        for k, item in enumerate(raw):
            where = f"extra_curves[{k}]"
            item = _expect_dict(item, where)
            name = item.get("name", f"extra-{k}")
            if not isinstance(name, str):
                raise ParseError("curve name must be a string", location=where)
            host = item.get("host")
            if host is not None and (isinstance(host, bool) or not isinstance(host, int)):
                raise ParseError("host must be an integer index or null",
                                 location=where)
            row = _rational_list(item.get("row", []), f"{where}.row")
            parsed.append(ExtraCurve(name=name, row=row, host=host))
        extra_curves = tuple(parsed)
    return IntersectionConfig(
        divisors=divisors,
        chosen_curves=curves,
        phi=phi,
        extra_curves=extra_curves,
        adjacency=adjacency,
    )


def config_to_dict(cfg: IntersectionConfig) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "divisors": list(cfg.divisors),
        "curves": list(cfg.chosen_curves),
        "phi": [[format_rational(x) for x in cfg.phi.row(i)] for i in range(cfg.r)],
    }
    if cfg.adjacency is not None:
        doc["adjacency"] = [list(row) for row in cfg.adjacency]
    if cfg.extra_curves:
        doc["extra_curves"] = [
            {
                "name": c.name,
                "host": c.host,
                "row": [format_rational(x) for x in c.row],
            }
            for c in cfg.extra_curves
        ]
    return doc


def divisor_from_dict(doc: Any) -> DivisorInput:
    doc = _expect_dict(doc, "divisor")
    _check_version(doc)
    if "lambda" not in doc:
        raise ParseError("missing required field 'lambda'")
    lam = _rational_list(doc["lambda"], "lambda")
    denominator = doc.get("cartier_denominator", 1)
    if isinstance(denominator, bool) or not isinstance(denominator, int):
        raise ParseError("cartier_denominator must be an integer",
                         location="cartier_denominator")
    extra_lambda = None
    if doc.get("extra_lambda") is not None:
        extra_lambda = _rational_list(doc["extra_lambda"], "extra_lambda")
    return DivisorInput(lam=lam, cartier_denominator=denominator,
                        extra_lambda=extra_lambda)


def divisor_to_dict(d: DivisorInput) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "lambda": [format_rational(x) for x in d.lam],
        "cartier_denominator": d.cartier_denominator,
    }
    if d.extra_lambda is not None:
        doc["extra_lambda"] = [format_rational(x) for x in d.extra_lambda]
    return doc


def graph_from_dict(doc: Any) -> DualGraph:
    doc = _expect_dict(doc, "dual graph")
    _check_version(doc)
    if "vertices" not in doc:
        raise ParseError("missing required field 'vertices'")
    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list):
        raise ParseError("vertices must be a list", location="vertices")
    vertices = []
    for k, item in enumerate(raw_vertices):
        where = f"vertices[{k}]"
        item = _expect_dict(item, where)
        label = item.get("label", f"E{k + 1}")
        if not isinstance(label, str):
            raise ParseError("vertex label must be a string", location=where)
        if "self_intersection" not in item:
            raise ParseError("missing self_intersection", location=where)
        weight = _rational(item["self_intersection"], f"{where}.self_intersection")
        vertices.append((label, weight))
    edges = []
    for k, item in enumerate(doc.get("edges", [])):
        where = f"edges[{k}]"
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise ParseError("edge must be [i, j] or [i, j, multiplicity]",
                             location=where)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in item):
            raise ParseError("edge entries must be integers", location=where)
        i, j = item[0], item[1]
        mult = item[2] if len(item) == 3 else 1
        edges.append((i, j, mult))
    return DualGraph(tuple(vertices), tuple(edges))


def graph_to_dict(g: DualGraph) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "vertices": [
            {"label": label, "self_intersection": format_rational(weight)}
            for label, weight in g.vertices
        ],
        "edges": [[i, j, mult] for i, j, mult in g.edges],
    }


def matrix_from_dict(doc: Any) -> RatMatrix:
    """A bare matrix document: {"matrix": [[...], ...]}."""
    doc = _expect_dict(doc, "matrix")
    _check_version(doc)
    if "matrix" not in doc:
        raise ParseError("missing required field 'matrix'")
    return _matrix(doc["matrix"], "matrix")


# -- file round-trips ----------------------------------------------------------


def load_document(path: Union[str, Path]) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror or exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, location=f"{p}:{exc.lineno}:{exc.colno}")


def dump_document(doc: Any, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_config(path: Union[str, Path]) -> IntersectionConfig:
    return config_from_dict(load_document(path))


def save_config(cfg: IntersectionConfig, path: Union[str, Path]) -> None:
    dump_document(config_to_dict(cfg), path)


def load_divisor(path: Union[str, Path]) -> DivisorInput:
    return divisor_from_dict(load_document(path))


def save_divisor(d: DivisorInput, path: Union[str, Path]) -> None:
    dump_document(divisor_to_dict(d), path)


def load_graph(path: Union[str, Path]) -> DualGraph:
    return graph_from_dict(load_document(path))


def save_graph(g: DualGraph, path: Union[str, Path]) -> None:
    dump_document(graph_to_dict(g), path)


# -- report serialization --------------------------------------------------------


def report_to_dict(report: MMatrixReport) -> dict:
    spectral = None
    if report.spectral is not None:
        spectral = {
            "s": report.spectral.s,
            "rho_hat": report.spectral.rho_hat,
            "converged": report.spectral.converged,
        }
    inverse = None
    if report.inverse is not None:
        inverse = [
            [format_rational(x) for x in report.inverse.row(i)]
            for i in range(report.inverse.rows)
        ]
    certificate = None
    if report.certificate_x is not None:
        certificate = [format_rational(x) for x in report.certificate_x]
    return {
        "verdict": report.verdict,
        "dimension": report.dimension,
        "minors": [format_rational(m) for m in report.minors],
        "minors_positive": report.minors_positive,
        "inverse_nonnegative": report.inverse_nonneg,
        "inverse": inverse,
        "certificate_x": certificate,
        "spectral_estimate": spectral,
    }


def result_to_dict(result: pb.PullbackResult) -> dict:
    return {
        "coefficients": [format_rational(c) for c in result.coefficients],
        "n": result.n,
        "m_integers": list(result.m_integers),
        "cartier_denominator": result.cartier_denominator,
        "full_coefficients": [format_rational(c) for c in result.full_coefficients],
        "effectivity": result.effectivity,
        "projection_residuals": [
            format_rational(x) for x in result.projection_residuals
        ],
        "extra_residuals": [
            {"name": name, "residual": format_rational(res)}
            for name, res in result.extra_residuals
        ],
        "path_agreement": result.path_agreement,
        "mmatrix_report": report_to_dict(result.mreport),
    }


# -- golden example library -------------------------------------------------------


@dataclass(frozen=True)
class ExampleEntry:
    """A named configuration with either frozen expected coefficients or an
    expected refusal.

    Expected coefficients were computed by an independent Cramer's-rule
    oracle before being committed here, and are re-validated against the
    projection residual equations whenever the library is built.
    """

    name: str
    config: IntersectionConfig
    divisor: DivisorInput
    expected_coefficients: Optional[RatVector]
    expected_refusal: Optional[type]
    provenance: str

    def __post_init__(self):
        if (self.expected_coefficients is None) == (self.expected_refusal is None):
            raise InvariantViolation(
                f"example {self.name!r} must expect exactly one of "
                "coefficients or refusal"
            )
        if self.expected_refusal is not None and not issubclass(
            self.expected_refusal, Refusal
        ):
            raise InvariantViolation(
                f"example {self.name!r} expected_refusal must be a Refusal subclass"
            )
        if self.expected_coefficients is not None:
            coeffs = self.expected_coefficients
            cfg, lam = self.config, self.divisor.lam
            if len(coeffs) != cfg.r or len(lam) != cfg.r:
                raise InvariantViolation(
                    f"example {self.name!r} has mismatched dimensions"
                )
            for j in range(cfg.r):
                residual = lam[j] + sum(
                    (coeffs[i] * cfg.phi[i, j] for i in range(cfg.r)), Fraction(0)
                )
                if residual != 0:
                    raise InvariantViolation(
                        f"example {self.name!r}: expected coefficients leave a "
                        f"nonzero residual {residual} on curve {j}"
                    )


def _frac_vec(*values: Union[int, str]) -> RatVector:
    return tuple(as_rational(v) for v in values)


def builtin_examples() -> tuple[ExampleEntry, ...]:
    """Golden examples exercising every headline case of the method."""
    from .errors import DisconnectedConfiguration, NoRationalPullback

    graphs = builtin_ade_graphs()
    entries = [
        ExampleEntry(
            name="A1",
            config=graph_to_config(graphs["A1"]),
            divisor=DivisorInput(lam=_frac_vec(1)),
            expected_coefficients=_frac_vec("1/2"),
            expected_refusal=None,
            provenance="ordinary double point; the classical half-exceptional pullback",
        ),
        ExampleEntry(
            name="A2",
            config=graph_to_config(graphs["A2"]),
            divisor=DivisorInput(lam=_frac_vec(1, 0)),
            expected_coefficients=_frac_vec("2/3", "1/3"),
            expected_refusal=None,
            provenance="A2 chain of (-2)-curves, transform meeting the first curve",
        ),
        ExampleEntry(
            name="A3",
            config=graph_to_config(graphs["A3"]),
            divisor=DivisorInput(lam=_frac_vec(1, 0, 0)),
            expected_coefficients=_frac_vec("3/4", "1/2", "1/4"),
            expected_refusal=None,
            provenance="A3 chain; coefficients follow (r+1-i)/(r+1)",
        ),
        ExampleEntry(
            name="D4",
            config=graph_to_config(graphs["D4"]),
            divisor=DivisorInput(lam=_frac_vec(1, 0, 0, 0)),
            expected_coefficients=_frac_vec(2, 1, 1, 1),
            expected_refusal=None,
            provenance="D4 star, transform meeting the central curve; Cramer oracle",
        ),
        ExampleEntry(
            name="E8",
            config=graph_to_config(graphs["E8"]),
            divisor=DivisorInput(lam=_frac_vec(1, 0, 0, 0, 0, 0, 0, 0)),
            expected_coefficients=_frac_vec(2, 3, 4, 5, 6, 4, 2, 3),
            expected_refusal=None,
            provenance="E8 tree (unimodular, so integer coefficients); Cramer oracle",
        ),
        ExampleEntry(
            name="cyclic-1-5",
            config=graph_to_config(chain_graph([-5])),
            divisor=DivisorInput(lam=_frac_vec(1)),
            expected_coefficients=_frac_vec("1/5"),
            expected_refusal=None,
            provenance="cyclic quotient 1/5(1,1): a single (-5)-curve",
        ),
        ExampleEntry(
            name="HJ-5-2",
            config=graph_to_config(hirzebruch_jung_chain(5, 2)),
            divisor=DivisorInput(lam=_frac_vec(1, 0)),
            expected_coefficients=_frac_vec("2/5", "1/5"),
            expected_refusal=None,
            provenance="Hirzebruch-Jung chain for 5/2 = [3, 2]",
        ),
        ExampleEntry(
            name="nonsymmetric-demo",
            config=IntersectionConfig(
                divisors=("E1", "E2"),
                chosen_curves=("C1", "C2"),
                phi=RatMatrix.from_rows([[-2, 3], [1, -4]]),
                adjacency=((False, True), (True, False)),
            ),
            divisor=DivisorInput(lam=_frac_vec(1, 1)),
            expected_coefficients=_frac_vec(1, 1),
            expected_refusal=None,
            provenance="non-symmetric higher-dimensional pairing (curves != divisors)",
        ),
        ExampleEntry(
            name="disconnected-pair",
            config=IntersectionConfig(
                divisors=("E1", "E2"),
                chosen_curves=("C1", "C2"),
                phi=RatMatrix.from_rows([[-2, 0], [0, -2]]),
                adjacency=((False, False), (False, False)),
            ),
            divisor=DivisorInput(lam=_frac_vec(1, 1)),
            expected_coefficients=None,
            expected_refusal=DisconnectedConfiguration,
            provenance="two exceptional divisors with empty intersection: rejected",
        ),
        ExampleEntry(
            name="conifold",
            config=IntersectionConfig(
                divisors=(),
                chosen_curves=(),
                phi=RatMatrix.from_rows([]),
                extra_curves=(ExtraCurve(name="C", row=(), host=None),),
            ),
            divisor=DivisorInput(lam=(), extra_lambda=_frac_vec(1)),
            expected_coefficients=None,
            expected_refusal=NoRationalPullback,
            provenance="small resolution of xy = uv: exceptional P^1, no divisor",
        ),
    ]
    return tuple(entries)


def get_example(name: str) -> ExampleEntry:
    for entry in builtin_examples():
        if entry.name == name:
            return entry
    raise KeyError(name)


def check_example(entry: ExampleEntry) -> tuple[bool, str]:
    """Recompute one golden example; (ok, human-readable detail)."""
    if entry.expected_refusal is not None:
        try:
            pb.compute_pullback(entry.config, entry.divisor)
        except entry.expected_refusal as exc:
            return True, f"refused as expected: {exc}"
        except RatpullError as exc:
            return False, (
                f"expected {entry.expected_refusal.__name__}, got "
                f"{type(exc).__name__}: {exc}"
            )
        return False, f"expected {entry.expected_refusal.__name__}, got a result"
    result = pb.compute_pullback(entry.config, entry.divisor)
    if result.coefficients == entry.expected_coefficients:
        pretty = ", ".join(format_rational(c) for c in result.coefficients)
        return True, f"m = {pretty}" if pretty else "m = (empty)"
    return False, (
        f"expected {tuple(map(str, entry.expected_coefficients))}, "
        f"got {tuple(map(str, result.coefficients))}"
    )
