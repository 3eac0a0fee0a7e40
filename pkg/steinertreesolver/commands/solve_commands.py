"""
solve command: run the solver on one STP file and write the solution and trace.
Exit status 0 when a feasible tree is found, 2 when none is, 1 on errors.
"""
import logging
from typing import Optional

import click

from .. import config
from ..errors import SteinerError, ConfigurationError, InfeasibleError
from ..models.solver_config import SolverConfig
from ..repositories.solution_repository import SolutionRepository
from ..repositories.stp_repository import StpRepository
from ..repositories.trace_repository import TraceRepository
from ..services.solver_service import SolverService
from ..services.tree_service import gap

logger = logging.getLogger(__name__)

EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

stp_repo = StpRepository()
solution_repo = SolutionRepository()
trace_repo = TraceRepository()


class SolverUsageError(click.UsageError):
    """Bad flags; exits with the generic error status."""

    exit_code = EXIT_ERROR


def build_config(variant: str, scheme: str, time_limit: float, seed: int, depth: Optional[int],
                 gamma1: Optional[float], gamma1_min: float, window: int, schedule: str,
                 mu: Optional[float], overlap: bool) -> SolverConfig:
    solver_config = SolverConfig(
        variant=variant,
        scheme=scheme,
        depth_override=depth,
        gamma1_start=gamma1 if gamma1 is not None else config.GAMMA1_START,
        gamma1_min=min(gamma1_min, gamma1) if gamma1 is not None else gamma1_min,
        time_limit=time_limit,
        seed=seed,
        window=window,
        mu=mu,
        schedule=schedule,
        overlap_extraction=overlap,
    )
    errors = solver_config.validate()
    if errors:
        raise SolverUsageError("; ".join(f"{field}: {msg}" for field, msg in errors.items()))
    return solver_config


@click.command("solve")
@click.argument("stp_file", type=click.Path(dir_okay=False))
@click.option("--variant", default="O", show_default=True, help="Labels O, N, J, W, F (e.g. 'F,J').")
@click.option("--scheme", type=click.Choice(config.VALID_SCHEMES), default="increasing", show_default=True)
@click.option("--time", "time_limit", type=float, default=config.TIME_LIMIT, show_default=True,
              help="Wall-clock budget in seconds.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--depth", type=int, default=None, help="Fixed depth bound D instead of D_min.")
@click.option("--gamma1", type=float, default=None, help="Starting reinforcement slope.")
@click.option("--gamma1-min", type=float, default=config.GAMMA1_MIN, show_default=True)
@click.option("--window", type=int, default=config.STABILITY_WINDOW, show_default=True)
@click.option("--schedule", type=click.Choice(config.VALID_SCHEDULES), default="sequential", show_default=True)
@click.option("--mu", type=float, default=None, help="Virtual-root edge weight for PCSPG rooting.")
@click.option("--overlap/--no-overlap", default=False, help="Extract on a worker thread while sweeping.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None)
@click.option("--solution", "solution_path", type=click.Path(dir_okay=False), default=None)
@click.option("--baseline", type=float, default=None, help="Reference energy for the GAP line.")
@click.pass_context
def solve_cmd(ctx, stp_file, variant, scheme, time_limit, seed, depth, gamma1, gamma1_min, window, schedule,
              mu, overlap, trace_path, solution_path, baseline):
    """Solve STP_FILE with reinforced Max-Sum."""
    solver_config = build_config(variant, scheme, time_limit, seed, depth, gamma1, gamma1_min, window,
                                 schedule, mu, overlap)
    try:
        instance = stp_repo.load(stp_file)
    except OSError as exc:
        click.echo(f"error: cannot read {stp_file}: {exc}", err=True)
        ctx.exit(EXIT_ERROR)
    except SteinerError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_ERROR)

    if solver_config.heuristic == "W" and instance.kind == "SPG":
        raise SolverUsageError("variant W applies to prize-collecting instances only")

    service = (ctx.obj or {}).get("solver") or SolverService()
    try:
        result = service.run(instance, solver_config)
    except ConfigurationError as exc:
        raise SolverUsageError(str(exc)) from exc
    except InfeasibleError as exc:
        click.echo(f"PB infeasible ({exc})")
        ctx.exit(EXIT_INFEASIBLE)
    except SteinerError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_ERROR)

    if trace_path:
        trace_repo.save(result.trace, trace_path)
    if not result.feasible:
        click.echo("PB infeasible")
        ctx.exit(EXIT_INFEASIBLE)

    if solution_path:
        solution_repo.save(result.instance, result.best.tree, result.energy, solution_path)
    click.echo(f"PB {result.energy:.6f}")
    if baseline is not None:
        try:
            click.echo(f"GAP {gap(result.energy, baseline):.2f}")
        except SteinerError as exc:
            click.echo(f"GAP undefined ({exc})")
