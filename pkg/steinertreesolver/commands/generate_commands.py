"""
generate commands: seeded grid and scale-free benchmark instances written as STP.
"""
import click

from .. import config
from ..errors import SteinerError
from ..repositories.stp_repository import StpRepository
from ..services.generator_service import GeneratorService

generator_service = GeneratorService()
stp_repo = StpRepository()


def _write(ctx, build, output: str) -> None:
    try:
        instance = build()
    except SteinerError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(1)
    stp_repo.save(instance, output)
    click.echo(f"wrote {output}: {instance.num_vertices} nodes, {instance.num_edges} edges")


@click.group("generate")
def generate_group():
    """Write benchmark instances."""


@generate_group.command("grid")
@click.option("--nx", "nx_", type=int, required=True)
@click.option("--ny", type=int, required=True)
@click.option("--nz", type=int, default=None)
@click.option("--terminals", type=int, required=True, help="Number of terminals a.")
@click.option("--prizes", type=(float, float), default=None, help="Prize range lo hi (PCSPG).")
@click.option("--pc", is_flag=True, help="Prize-collecting with the default prize range.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def grid_cmd(ctx, nx_, ny, nz, terminals, prizes, pc, seed, output):
    """Grid lattice (2D, or 3D with --nz)."""
    prizes = prizes or (config.DEFAULT_PRIZE_RANGE if pc else None)
    _write(ctx, lambda: generator_service.grid(nx_, ny, nz, terminals, prizes, seed), output)


@generate_group.command("sf")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--terminals", type=int, required=True, help="Number of terminals a.")
@click.option("--prizes", type=(float, float), default=None, help="Prize range lo hi (PCSPG).")
@click.option("--pc", is_flag=True, help="Prize-collecting with the default prize range.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def sf_cmd(ctx, n, m, terminals, prizes, pc, seed, output):
    """Barabasi-Albert scale-free graph."""
    prizes = prizes or (config.DEFAULT_PRIZE_RANGE if pc else None)
    _write(ctx, lambda: generator_service.scale_free(n, m, terminals, prizes, seed), output)
