import pathlib
from typing import Optional

import click

from src.api.dependencies import (
    emit,
    eps_prox_option,
    handle_errors,
    instance_option,
    json_option,
    open_problem,
    with_params,
)
from src.api.routes.analyze import base_report
from src.models.schemas.report import PropertyReport
from src.solvers.bpp_solver import certify_hypotheses, check_uniqueness_H
from src.solvers.oracle_gen import oracle_for
from src.utilities.constants import ExitCode


def _property_line(report: PropertyReport) -> str:
    line = f"{report.name:<26}{'holds' if report.holds else 'FAILS'} ({report.checked} cases)"
    if report.witnesses:
        line += f"; e.g. {report.witnesses[0].description}"
    return line


@click.command(name="check")
@instance_option
@json_option
@eps_prox_option
@with_params
@click.option(
    "--scope",
    type=click.Choice(["A0", "A"]),
    default="A0",
    show_default=True,
    help="Pairs whose contraction audit decides the verdict.",
)
@handle_errors
def check(
    instance_path: pathlib.Path,
    as_json: bool,
    eps_prox: Optional[float],
    k: Optional[float],
    lam: Optional[float],
    scope: str,
) -> None:
    """
    Check the hypotheses of the existence theorem; exits with 2 when one fails.
    """
    problem = open_problem(instance_path, k=k, lam=lam, eps_prox=eps_prox)
    hypotheses = certify_hypotheses(problem)
    oracle = oracle_for(problem)
    audit = hypotheses.contraction if scope == "A0" else hypotheses.contraction_full

    report = base_report("check", instance_path, problem)
    report.hypotheses = hypotheses
    report.oracle = oracle
    report.uniqueness = check_uniqueness_H(oracle.bpps, problem, audit)

    structural = hypotheses.range_condition.holds and hypotheses.weak_P.holds and hypotheses.admissible.holds
    verdict = structural and audit.holds
    properties = (hypotheses.range_condition, hypotheses.weak_P, hypotheses.P, hypotheses.admissible)
    lines = [_property_line(item) for item in properties]
    for item in (hypotheses.contraction, hypotheses.contraction_full):
        lines.append(
            f"{'contraction[' + item.scope + ']':<26}{'holds' if item.holds else 'FAILS'} "
            f"(k = {item.k:g}, k_min = {item.k_min}, worst pair {item.worst_pair})"
        )
    lines.append(f"{'uniqueness':<26}{report.uniqueness.diagnostic}")
    if problem.assumptions:
        lines.append(f"{'assumed, not checked':<26}{', '.join(problem.assumptions)}")
    lines.append(f"{'verdict':<26}{'certified' if verdict else 'NOT certified'} (contraction scope {scope})")
    emit(report, as_json, lines, ExitCode.SUCCESS if verdict else ExitCode.HYPOTHESIS_VIOLATION)
