"""
compare command: gap report between two saved traces.
"""
import click

from ..repositories.trace_repository import TraceRepository
from ..services.solver_service import compare

trace_repo = TraceRepository()


@click.command("compare")
@click.argument("trace_x", type=click.Path(exists=True, dir_okay=False))
@click.argument("trace_y", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def compare_cmd(ctx, trace_x, trace_y):
    """Gap (x - y) / y * 100 of the final primal bounds; negative means x wins."""
    report = compare(trace_repo.load(trace_x), trace_repo.load(trace_y))
    for line in report.lines():
        click.echo(line)
    if not report.feasible:
        ctx.exit(2)
