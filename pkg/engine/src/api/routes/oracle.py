import pathlib
from typing import Optional

import click

from src.api.dependencies import emit, eps_prox_option, handle_errors, instance_option, json_option, open_problem
from src.solvers.oracle_gen import oracle_for


@click.command(name="oracle")
@instance_option
@json_option
@eps_prox_option
@handle_errors
def oracle(instance_path: pathlib.Path, as_json: bool, eps_prox: Optional[float]) -> None:
    """
    Brute-force every best proximity point of an instance.
    """
    problem = open_problem(instance_path, eps_prox=eps_prox)
    report = oracle_for(problem)
    lines = [f"d(A, B) = {report.d_AB:g}", f"best proximity points: {report.bpp_points}"]
    lines += [f"  A[{x}] = {list(problem.A[x])}: gap {gap:g}" for x, gap in enumerate(report.gaps)]
    emit(report, as_json, lines)
