"""
SolutionRepository: the `VALUE` / `EDGE` solution format in external vertex ids.
"""
import io
import os
from typing import Tuple, TextIO, Optional

from ..errors import StructuralError
from ..models.instance import Instance
from ..models.solution_tree import SolutionTree


def format_solution(instance: Instance, tree: SolutionTree, energy: float) -> str:
    out = io.StringIO()
    out.write(f"VALUE {energy:.6f}\n")
    for child, parent in tree.edges():
        out.write(f"EDGE {instance.external_id(child)} {instance.external_id(parent)}\n")
    return out.getvalue()


def parse_solution(instance: Instance, stream: TextIO) -> Tuple[float, SolutionTree]:
    """Read a solution back; EDGE lines are (child, parent) pairs in external ids."""
    value: Optional[float] = None
    parent = {}
    for line_no, raw in enumerate(stream, start=1):
        tokens = raw.split()
        if not tokens:
            continue
        key = tokens[0].upper()
        try:
            if key == "VALUE" and len(tokens) == 2:
                value = float(tokens[1])
            elif key == "EDGE" and len(tokens) == 3:
                child = instance.internal_id(int(tokens[1]))
                parent[child] = instance.internal_id(int(tokens[2]))
            else:
                raise StructuralError(f"line {line_no}: unexpected '{raw.strip()}'")
        except (KeyError, ValueError) as exc:
            if isinstance(exc, StructuralError):
                raise
            raise StructuralError(f"line {line_no}: bad entry '{raw.strip()}'") from exc
    if value is None:
        raise StructuralError("solution has no VALUE line")
    roots = set(parent.values()) - set(parent)
    if len(roots) > 1:
        raise StructuralError("solution edges do not form a single rooted tree")
    if roots:
        root = roots.pop()
    elif instance.root is not None:
        root = instance.root
    else:
        raise StructuralError("cannot determine the root of an edgeless solution")
    tree = SolutionTree(root, parent)
    errors = tree.validate(instance)
    if errors:
        raise StructuralError("; ".join(errors.values()))
    return value, tree


class SolutionRepository:
    """File-level access to solution files."""

    def __init__(self, encoding: str = "utf-8"):
        self.encoding = encoding

    def save(self, instance: Instance, tree: SolutionTree, energy: float, path: str) -> None:
        directory = os.path.dirname(path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(path, "w", encoding=self.encoding, newline="\n") as handle:
            handle.write(format_solution(instance, tree, energy))

    def load(self, instance: Instance, path: str) -> Tuple[float, SolutionTree]:
        with open(path, "r", encoding=self.encoding) as handle:
            return parse_solution(instance, handle)
