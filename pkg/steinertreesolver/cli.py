"""
Top-level command line: registers the solve, generate and compare commands
onto one group and configures logging.
"""
import logging

import click

from . import __version__, config
from .commands import solve_cmd, generate_group, compare_cmd


@click.group()
@click.version_option(__version__)
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
@click.pass_context
def cli(ctx, verbose):
    """Reinforced Max-Sum solver for rooted, prize-collecting and classic Steiner trees."""
    ctx.ensure_object(dict)
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


cli.add_command(solve_cmd)
cli.add_command(generate_group)
cli.add_command(compare_cmd)


def main() -> None:
    cli(obj={})
