"""
TraceRecord and Extraction entities.
TraceRecord: one row of the anytime primal-bound trace.
Extraction: a feasible-tree candidate produced by a heuristic (or by the decisional variables).
"""
import math
from typing import Optional, Dict, Any

from .solution_tree import SolutionTree


class TraceRecord:
    """Timestamped (iteration, label, energy, feasibility) row."""

    def __init__(
        self,
        wall_time: float,
        iteration: int,
        label: str,
        energy: float,
        feasible: bool,
        depth: int,
        gamma1: float,
    ):
        self.wall_time = float(wall_time)
        self.iteration = int(iteration)
        self.label = label
        self.energy = float(energy)
        self.feasible = bool(feasible)
        self.depth = int(depth)
        self.gamma1 = float(gamma1)

    def validate(self) -> Dict[str, str]:
        errors = {}
        if self.feasible and not math.isfinite(self.energy):
            errors["energy"] = "Feasible records must carry a finite energy"
        if self.wall_time < 0:
            errors["wall_time"] = "Wall time cannot be negative"
        return errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            "time_s": self.wall_time,
            "iter": self.iteration,
            "label": self.label,
            "energy": self.energy,
            "feasible": self.feasible,
            "D": self.depth,
            "gamma1": self.gamma1,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TraceRecord":
        feasible = data.get("feasible", False)
        if isinstance(feasible, str):
            feasible = feasible.strip().lower() in ("true", "1")
        return cls(
            wall_time=data.get("time_s", 0.0),
            iteration=data.get("iter", 0),
            label=str(data.get("label", "")),
            energy=data.get("energy", math.inf),
            feasible=feasible,
            depth=data.get("D", 0),
            gamma1=data.get("gamma1", 0.0),
        )

    def __repr__(self) -> str:
        return f"TraceRecord(t={self.wall_time:.3f}, iter={self.iteration}, label={self.label}, energy={self.energy})"


class Extraction:
    """A candidate tree with its energy under the original instance."""

    def __init__(self, label: str, tree: SolutionTree, energy: float, feasible: bool, iteration: int = 0):
        self.label = label
        self.tree = tree
        self.energy = float(energy)
        self.feasible = bool(feasible)
        self.iteration = int(iteration)

    def __repr__(self) -> str:
        return f"Extraction(label={self.label}, energy={self.energy}, feasible={self.feasible})"
