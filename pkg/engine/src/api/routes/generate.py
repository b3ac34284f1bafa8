import pathlib
from typing import Optional

import click

from src.api.dependencies import handle_errors
from src.models.domain.geometry import MetricKind
from src.repository.crud.instance import canonical_json, instance_digest, save_instance
from src.solvers.oracle_gen import GenerationProfile, gen_instance
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import BppToolkitError


@click.command(name="gen")
@click.option("--seed", type=int, required=True, help="Seed of the random generator.")
@click.option("--n-a", type=int, default=5, show_default=True)
@click.option("--n-b", type=int, default=5, show_default=True)
@click.option("--dim", type=int, default=2, show_default=True)
@click.option("--metric", type=click.Choice(["L1", "L2", "LINF"]), default="L1", show_default=True)
@click.option("--image-size", type=int, default=2, show_default=True)
@click.option("--same-sets", is_flag=True, help="Draw A = B (fixed-point instance).")
@click.option(
    "--weak-p/--no-weak-p", default=True, show_default=True, help="Reject draws without the weak P-property."
)
@click.option("--force-range/--no-force-range", default=True, show_default=True, help="Draw images of A0 from B0.")
@click.option("--k", type=float, default=0.9, show_default=True)
@click.option("--lam", type=float, default=0.0, show_default=True)
@click.option(
    "--planted", type=int, default=4, show_default=True, help="Length of the planted proximal chain (0 or 1: none)."
)
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=pathlib.Path), default=None)
@handle_errors
def generate(
    seed: int,
    n_a: int,
    n_b: int,
    dim: int,
    metric: str,
    image_size: int,
    same_sets: bool,
    weak_p: bool,
    force_range: bool,
    k: float,
    lam: float,
    planted: int,
    out_path: Optional[pathlib.Path],
) -> None:
    """
    Generate a random instance on the integer lattice; prints it or writes it to --out.
    """
    profile = GenerationProfile(
        n_A=n_a,
        n_B=n_b,
        dim=dim,
        metric=MetricKind(metric),
        image_size=image_size,
        force_weak_P=weak_p,
        same_sets=same_sets,
        force_range=force_range,
        k=k,
        lam=lam,
        planted_pairs=planted,
    )
    result = gen_instance(seed, profile)
    if result.exhausted:
        raise BppToolkitError(ErrorMessages.REJECTION_EXHAUSTED.value.format(result.attempts))
    if out_path is None:
        click.echo(canonical_json(result.instance), nl=False)
        return
    save_instance(result.instance, out_path)
    click.echo(f"{out_path} ({instance_digest(result.instance)[:12]}, {result.attempts} draw(s))")
