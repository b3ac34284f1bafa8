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
from src.config.settings.logger_config import logger
from src.models.schemas.report import BppResult, SolverOutcome
from src.solvers.bpp_solver import check_uniqueness_H, solve as solve_problem, solve_problem_fixed_point
from src.solvers.oracle_gen import oracle_for
from src.utilities.constants import ExitCode

OUTCOME_EXIT_CODES = {
    SolverOutcome.CONVERGED: ExitCode.SUCCESS,
    SolverOutcome.HYPOTHESIS_VIOLATION: ExitCode.HYPOTHESIS_VIOLATION,
    SolverOutcome.MAX_ITER: ExitCode.NOT_CONVERGED,
    SolverOutcome.STALLED: ExitCode.NOT_CONVERGED,
    SolverOutcome.CYCLE: ExitCode.NOT_CONVERGED,
}


def _trace_lines(result: BppResult) -> list[str]:
    lines = []
    for step in result.trace.steps:
        if step.d_step is None:
            lines.append(f"  n={step.n:<4} x={step.x} gap={step.gap:g}")
        else:
            lines.append(
                f"  n={step.n:<4} x={step.x} y={step.y} d_step={step.d_step:g} d_y={step.d_y:g} "
                f"bound={step.bound:.4g} alpha_ok={step.alpha_ok}"
            )
    return lines


@click.command(name="solve")
@instance_option
@json_option
@eps_prox_option
@click.option("--eps-stop", type=float, default=None, help="Stop when D(x_n, F x_n) - d(A, B) drops to this value.")
@click.option("--max-iter", type=int, default=None, help="Iteration cap.")
@with_params
@click.option("--fixed-point", is_flag=True, help="Treat the instance as a self-map of A = B.")
@click.option("--x0", type=int, default=None, help="Starting index in fixed-point mode (default: seeds.x0 or 0).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=pathlib.Path), default=None)
@handle_errors
def solve(
    instance_path: pathlib.Path,
    as_json: bool,
    eps_prox: Optional[float],
    eps_stop: Optional[float],
    max_iter: Optional[int],
    k: Optional[float],
    lam: Optional[float],
    fixed_point: bool,
    x0: Optional[int],
    out_path: Optional[pathlib.Path],
) -> None:
    """
    Run the proximal Picard iteration and compare its result with the brute-force oracle.

    Exit codes: 0 converged, 2 range condition broken mid-run or inadmissible seeds,
    3 iteration cap, stall or cycle.
    """
    problem = open_problem(instance_path, k=k, lam=lam, eps_prox=eps_prox, eps_stop=eps_stop, max_iter=max_iter)
    if fixed_point:
        start = x0 if x0 is not None else (problem.seeds.x0 if problem.seeds else 0)
        result = solve_problem_fixed_point(problem, start)
    else:
        result = solve_problem(problem)
    oracle = oracle_for(problem)

    report = base_report("solve", instance_path, problem)
    report.result = result
    report.hypotheses = result.hypotheses
    report.oracle = oracle
    report.oracle_match = result.outcome is SolverOutcome.CONVERGED and result.point_index in oracle.bpps
    report.uniqueness = check_uniqueness_H(oracle.bpps, problem, result.hypotheses.contraction)
    if out_path is not None:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Run report written to {out_path}")

    lines = [
        f"outcome      {result.outcome.value}: {result.trace.detail}",
        f"point        {result.point} (gap {result.gap:g})",
        f"certified    {result.certified}"
        + ("" if result.hypotheses.certified else f" (failed: {', '.join(result.hypotheses.failed())})"),
        f"oracle       {oracle.bpp_points} (match: {report.oracle_match})",
        f"uniqueness   {report.uniqueness.diagnostic}",
        "trace",
        *_trace_lines(result),
    ]
    emit(report, as_json, lines, OUTCOME_EXIT_CODES[result.outcome])
