"""
Shared options and error handling of the CLI commands.

Every command is wrapped by `handle_errors`, which renders any toolkit failure as an
`ErrorResponse` and exits with the code carried by the exception.
"""

import functools
import pathlib
from dataclasses import replace
from typing import Callable, Optional

import click

from src.config.settings.logger_config import logger
from src.models.domain.problem import ProximityProblem
from src.models.schemas.error_response import ErrorResponse
from src.repository.crud.instance import load_instance
from src.utilities.constants import ExitCode
from src.utilities.messages.exceptions.errors import (
    BppToolkitError,
    InstanceParseError,
    InstanceValidationError,
)

instance_option = click.option(
    "--instance",
    "instance_path",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    required=True,
    help="Path to the JSON instance file.",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Print the machine-readable report.")
eps_prox_option = click.option("--eps-prox", type=float, default=None, help="Tolerance of d(x, y) = d(A, B).")
params_options = (
    click.option("--k", "k", type=float, default=None, help="Override the contraction exponent k."),
    click.option("--lam", "lam", type=float, default=None, help="Override lambda."),
)


def with_params(func: Callable) -> Callable:
    for option in reversed(params_options):
        func = option(func)
    return func


def _location(error: BppToolkitError) -> Optional[str]:
    if isinstance(error, InstanceParseError):
        return f"line {error.line}, column {error.column}"
    if isinstance(error, InstanceValidationError):
        return error.field
    return None


def handle_errors(func: Callable) -> Callable:
    """
    Render toolkit failures as an ErrorResponse and exit with their code.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except BppToolkitError as e:
            logger.error(f"{func.__name__} failed: {e}")
            response = ErrorResponse(
                detail=str(e),
                exit_code=int(e.exit_code),
                error_type=type(e).__name__,
                location=_location(e),
            )
            if kwargs.get("as_json"):
                click.echo(response.model_dump_json(indent=2))
            else:
                where = f" [{response.location}]" if response.location else ""
                click.echo(f"Error ({response.error_type}){where}: {response.detail}", err=True)
            click.get_current_context().exit(response.exit_code)

    return wrapper


def open_problem(
    instance_path: pathlib.Path,
    k: Optional[float] = None,
    lam: Optional[float] = None,
    eps_prox: Optional[float] = None,
    eps_stop: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> ProximityProblem:
    """Load an instance and apply the per-invocation overrides."""
    problem = load_instance(instance_path)
    if k is not None or lam is not None:
        problem = problem.with_params(k=k, lam=lam)
    limits = problem.limits.override(eps_prox=eps_prox, eps_stop=eps_stop, max_iter=max_iter)
    return replace(problem, limits=limits)


def emit(report, as_json: bool, lines: list[str], exit_code: ExitCode = ExitCode.SUCCESS) -> None:
    """Print a report as JSON or as text lines, then exit with the given code."""
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        for line in lines:
            click.echo(line)
    if exit_code is not ExitCode.SUCCESS:
        click.get_current_context().exit(int(exit_code))
