import pathlib
from typing import Optional

import click

import src
from src.api.dependencies import eps_prox_option, emit, handle_errors, instance_option, json_option, open_problem
from src.config.settings.logger_config import logger
from src.models.domain.problem import ProximityProblem
from src.models.schemas.report import RunReport, SetGeometry
from src.repository.crud.instance import instance_digest
from src.solvers.metric_core import directed_hausdorff, dist_set_set, hausdorff
from src.solvers.proximal_structure import proximal_pairs
from src.solvers.theta_kit import check_theta_conditions


def set_geometry(problem: ProximityProblem) -> SetGeometry:
    d_AB, (a, b) = dist_set_set(problem.A, problem.B, problem.metric)
    directed_ab, _ = directed_hausdorff(problem.A, problem.B, problem.metric)
    directed_ba, _ = directed_hausdorff(problem.B, problem.A, problem.metric)
    return SetGeometry(
        d_AB=d_AB,
        attaining_pair=(list(a), list(b)),
        hausdorff=hausdorff(problem.A, problem.B, problem.metric),
        directed_AB=directed_ab,
        directed_BA=directed_ba,
        sizes=(len(problem.A), len(problem.B)),
    )


def base_report(command: str, instance_path: pathlib.Path, problem: ProximityProblem) -> RunReport:
    limits = problem.limits
    return RunReport(
        tool_version=src.__version__,
        command=command,
        instance=str(instance_path),
        instance_digest=instance_digest(problem.document) if problem.document is not None else None,
        metric=problem.metric.describe(),
        theta=problem.theta.describe(),
        tolerances={
            "eps_dup": limits.eps_dup,
            "eps_prox": limits.eps_prox,
            "eps_stop": limits.eps_stop,
            "eps_step": limits.eps_step,
            "max_iter": float(limits.max_iter),
        },
        assumptions=list(problem.assumptions),
    )


@click.command(name="analyze")
@instance_option
@json_option
@eps_prox_option
@handle_errors
def analyze(instance_path: pathlib.Path, as_json: bool, eps_prox: Optional[float]) -> None:
    """
    Set distances, Hausdorff distance, proximal subsets and Theta conditions of an instance.
    """
    problem = open_problem(instance_path, eps_prox=eps_prox)
    report = base_report("analyze", instance_path, problem)
    report.geometry = set_geometry(problem)
    report.pairing = proximal_pairs(problem.A, problem.B, problem.metric, problem.limits.eps_prox).summary()
    report.theta_conditions = check_theta_conditions(problem.theta)
    logger.info(f"Analyzed {instance_path}: d(A, B) = {report.geometry.d_AB:g}")

    geometry, pairing, conditions = report.geometry, report.pairing, report.theta_conditions
    lines = [
        f"instance      {instance_path} ({report.instance_digest[:12]})",
        f"metric        {report.metric}, |A| = {geometry.sizes[0]}, |B| = {geometry.sizes[1]}",
        f"d(A, B)       {geometry.d_AB:g} at {geometry.attaining_pair[0]} - {geometry.attaining_pair[1]}",
        f"H(A, B)       {geometry.hausdorff:g} (A->B {geometry.directed_AB:g}, B->A {geometry.directed_BA:g})",
        f"A0            {pairing.A0_points}",
        f"B0            {pairing.B0_points}",
        f"Theta         {conditions.theta}: Theta1 {conditions.theta1}, Theta2 {conditions.theta2}, "
        f"Theta3 {conditions.theta3} (best k {conditions.best_k}, vanishing {conditions.vanishing})",
    ]
    emit(report, as_json, lines)
