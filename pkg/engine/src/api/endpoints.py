import click

import src
from src.api.routes.analyze import analyze
from src.api.routes.bvp import bvp
from src.api.routes.check import check
from src.api.routes.generate import generate
from src.api.routes.oracle import oracle
from src.api.routes.solve import solve


@click.group(name="bpp")
@click.version_option(version=src.__version__, prog_name="bpp")
def cli() -> None:
    """
    Best proximity points of multivalued almost Theta-contractions, and the boundary value
    problem -x'' = f(t, x), x(0) = x(1) = 0 by Picard iteration.
    """


cli.add_command(analyze)
cli.add_command(check)
cli.add_command(solve)
cli.add_command(oracle)
cli.add_command(bvp)
cli.add_command(generate)
