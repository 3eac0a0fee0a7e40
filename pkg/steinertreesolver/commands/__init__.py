"""Command groups registered onto the top-level CLI."""
from .solve_commands import solve_cmd
from .generate_commands import generate_group
from .compare_commands import compare_cmd
