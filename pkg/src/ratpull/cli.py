"""Batch command-line interface over the configlib document format.

Exit codes are a stable contract: 0 on success, 1 on a mathematical
refusal (the reason is named on stderr), 2 on input or IO errors. Human
output prints rationals exactly as "p/q"; decimals appear only behind
--approx and are marked advisory.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

import click

from . import configlib, mmatrix, pullback as pb
from .errors import InternalInconsistency, RatpullError, Refusal
from .pullback import DivisorInput
from .ratmat import format_rational, parse_rational


def _fmt_seq(values: Sequence) -> str:
    return ", ".join(format_rational(v) for v in values)


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Refusal as exc:
            click.echo(f"refused: {exc}", err=True)
            sys.exit(1)
        except InternalInconsistency as exc:
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(2)
        except (RatpullError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _parse_lambda(text: str) -> tuple[Fraction, ...]:
    items = [s for s in (part.strip() for part in text.split(",")) if s]
    return tuple(parse_rational(s) for s in items)


def _load_divisor_arg(
    divisor_path: Optional[str],
    lambda_text: Optional[str],
    cartier_denominator: int,
) -> DivisorInput:
    if (divisor_path is None) == (lambda_text is None):
        raise click.UsageError(
            "provide exactly one of a divisor document or --lambda"
        )
    if lambda_text is not None:
        return DivisorInput(
            lam=_parse_lambda(lambda_text),
            cartier_denominator=cartier_denominator,
        )
    return configlib.load_divisor(divisor_path)


@click.group()
@click.version_option(package_name="ratpull", prog_name="ratpull")
def main():
    """Exact rational pullback of Weil divisors from intersection data."""


@main.command("check-mmatrix")
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="Emit the structured report.")
@_handle_errors
def cmd_check_mmatrix(path: str, as_json: bool):
    """Certify the matrix in PATH (or A = -phi^T of a configuration)."""
    doc = configlib.load_document(path)
    if isinstance(doc, dict) and "phi" in doc:
        cfg = configlib.config_from_dict(doc)
        matrix = pb.negated_transpose(cfg.phi)
        source = "A = -phi^T derived from the configuration"
    else:
        matrix = configlib.matrix_from_dict(doc)
        source = "matrix taken from the document"
    z = mmatrix.as_z_matrix(matrix)
    report = mmatrix.is_invertible_m_matrix(z)
    if as_json:
        click.echo(json.dumps(configlib.report_to_dict(report), indent=2))
    else:
        click.echo(source)
        click.echo(f"dimension: {report.dimension}")
        click.echo(f"leading principal minors: {_fmt_seq(report.minors)}")
        click.echo(f"inverse nonnegative: {'yes' if report.inverse_nonneg else 'no'}")
        if report.certificate_x is not None:
            click.echo(f"certificate x: {_fmt_seq(report.certificate_x)}")
        else:
            click.echo("certificate x: none")
        if report.spectral is not None:
            est = report.spectral
            state = "converged" if est.converged else "not converged"
            click.echo(
                f"spectral estimate (advisory): s = {est.s:g}, "
                f"rho_hat = {est.rho_hat:.9g} ({state})"
            )
        verdict = "invertible M-matrix" if report.verdict else "not an invertible M-matrix"
        click.echo(f"verdict: {verdict}")
    if not report.verdict:
        sys.exit(1)


def _print_result(result: pb.PullbackResult, approx: bool):
    if result.coefficients:
        click.echo(f"m = {_fmt_seq(result.coefficients)}")
    else:
        click.echo("m = (none); the pullback is the strict transform")
    click.echo(
        f"n = {result.n}; integer numerators: "
        f"{', '.join(map(str, result.m_integers)) or '(none)'}"
    )
    if result.cartier_denominator != 1:
        click.echo(
            f"full coefficients (divided by n' = {result.cartier_denominator}): "
            f"{_fmt_seq(result.full_coefficients)}"
        )
    minors = result.mreport.minors
    click.echo(f"certified: A = -phi^T is an invertible M-matrix (minors: {_fmt_seq(minors)})")
    zero = all(x == 0 for x in result.projection_residuals)
    click.echo(f"projection residuals: {'all zero' if zero else _fmt_seq(result.projection_residuals)}")
    click.echo(f"effectivity: {'yes' if result.effectivity else 'no'}")
    if result.path_agreement is not None:
        click.echo(f"path agreement: {'yes' if result.path_agreement else 'no'}")
    if approx and result.coefficients:
        decimals = ", ".join(f"{float(c):.6g}" for c in result.coefficients)
        click.echo(f"approx m = {decimals} (decimal approximation, advisory)")


def _print_verification(cfg, divisor, result) -> None:
    if result.extra_residuals:
        click.echo("extra-curve residuals:")
        for name, residual in result.extra_residuals:
            status = "ok" if residual == 0 else "INCONSISTENT"
            click.echo(f"  {name}: {format_rational(residual)} [{status}]")
    else:
        click.echo("extra-curve residuals: none supplied")
    probe = pb.uniqueness_probe(cfg, divisor, result)
    click.echo(
        "uniqueness probe: "
        + ("every single-coefficient perturbation breaks a residual"
           if probe else "FAILED")
    )
    if not probe:
        raise InternalInconsistency("uniqueness probe failed on a certified solve")


@main.command("pullback")
@click.argument("config_path", type=click.Path())
@click.argument("divisor_path", type=click.Path(), required=False)
@click.option("--lambda", "lambda_text", default=None,
              help="Inline lambda vector, e.g. '1,0' or '1/2,3'.")
@click.option("--cartier-denominator", type=int, default=1, show_default=True,
              help="n' with n'D' Cartier (with --lambda).")
@click.option("--verify", is_flag=True,
              help="Also check extra-curve residuals and probe uniqueness.")
@click.option("--json", "as_json", is_flag=True, help="Structured output.")
@click.option("--approx", is_flag=True, help="Append advisory decimal values.")
@click.option("--allow-disconnected", is_flag=True,
              help="Solve disconnected configurations blockwise.")
@click.option("--allow-signed-lambda", is_flag=True,
              help="Accept negative lambda entries (suspends effectivity).")
@_handle_errors
def cmd_pullback(
    config_path: str,
    divisor_path: Optional[str],
    lambda_text: Optional[str],
    cartier_denominator: int,
    verify: bool,
    as_json: bool,
    approx: bool,
    allow_disconnected: bool,
    allow_signed_lambda: bool,
):
    """Compute the exact pullback coefficients for a configuration."""
    cfg = configlib.load_config(config_path)
    divisor = _load_divisor_arg(divisor_path, lambda_text, cartier_denominator)
    result = pb.compute_pullback(
        cfg,
        divisor,
        allow_signed_lambda=allow_signed_lambda,
        allow_disconnected=allow_disconnected,
    )
    if as_json:
        doc = configlib.result_to_dict(result)
        if verify:
            doc["uniqueness_probe"] = pb.uniqueness_probe(cfg, divisor, result)
        click.echo(json.dumps(doc, indent=2))
    else:
        _print_result(result, approx)
        if verify:
            _print_verification(cfg, divisor, result)
    if verify and not result.extra_consistent:
        click.echo("refused: extra-curve data inconsistent with the solution",
                   err=True)
        sys.exit(1)


@main.command("surface")
@click.argument("graph_path", type=click.Path())
@click.argument("divisor_path", type=click.Path(), required=False)
@click.option("--lambda", "lambda_text", default=None,
              help="Inline lambda vector, e.g. '1,0,0'.")
@click.option("--cartier-denominator", type=int, default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Structured output.")
@click.option("--approx", is_flag=True, help="Append advisory decimal values.")
@_handle_errors
def cmd_surface(
    graph_path: str,
    divisor_path: Optional[str],
    lambda_text: Optional[str],
    cartier_denominator: int,
    as_json: bool,
    approx: bool,
):
    """Pull back through a surface dual graph (symmetric, negative-definite)."""
    graph = configlib.load_graph(graph_path)
    cfg = configlib.graph_to_config(graph)
    divisor = _load_divisor_arg(divisor_path, lambda_text, cartier_denominator)
    result = pb.mumford_surface_pullback(cfg, divisor)
    if as_json:
        click.echo(json.dumps(configlib.result_to_dict(result), indent=2))
    else:
        _print_result(result, approx)


@main.group("examples")
def cmd_examples():
    """Inspect or rerun the golden example library."""


@cmd_examples.command("list")
@_handle_errors
def cmd_examples_list():
    for entry in configlib.builtin_examples():
        if entry.expected_coefficients is not None:
            expected = f"m = {_fmt_seq(entry.expected_coefficients)}"
        else:
            expected = f"refusal: {entry.expected_refusal.__name__}"
        click.echo(f"{entry.name:20s} {expected:40s} {entry.provenance}")


@cmd_examples.command("show")
@click.argument("name")
@click.option("--json", "as_json", is_flag=True)
@_handle_errors
def cmd_examples_show(name: str, as_json: bool):
    try:
        entry = configlib.get_example(name)
    except KeyError:
        click.echo(f"error: no example named {name!r}", err=True)
        sys.exit(2)
    doc = {
        "name": entry.name,
        "provenance": entry.provenance,
        "config": configlib.config_to_dict(entry.config),
        "divisor": configlib.divisor_to_dict(entry.divisor),
    }
    if entry.expected_coefficients is not None:
        doc["expected_coefficients"] = [
            format_rational(c) for c in entry.expected_coefficients
        ]
    else:
        doc["expected_refusal"] = entry.expected_refusal.__name__
    if as_json:
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"{entry.name}: {entry.provenance}")
        click.echo(json.dumps(doc["config"], indent=2))
        click.echo(f"lambda = {_fmt_seq(entry.divisor.lam)}")
        if entry.expected_coefficients is not None:
            click.echo(f"expected m = {_fmt_seq(entry.expected_coefficients)}")
        else:
            click.echo(f"expected refusal: {entry.expected_refusal.__name__}")


@cmd_examples.command("run-all")
@click.option("--json", "as_json", is_flag=True)
@_handle_errors
def cmd_examples_run_all(as_json: bool):
    """Recompute every golden example and compare exactly."""
    failures = []
    lines = []
    for entry in configlib.builtin_examples():
        ok, detail = configlib.check_example(entry)
        lines.append({"name": entry.name, "ok": ok, "detail": detail})
        if not ok:
            failures.append(entry.name)
    if as_json:
        click.echo(json.dumps({"results": lines, "ok": not failures}, indent=2))
    else:
        for line in lines:
            mark = "ok  " if line["ok"] else "FAIL"
            click.echo(f"{mark} {line['name']:20s} {line['detail']}")
    if failures:
        click.echo(f"error: examples failed: {', '.join(failures)}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
