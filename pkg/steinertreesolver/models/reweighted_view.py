"""
ReweightedView entity: auxiliary edge costs built from a field snapshot.
"""
from typing import FrozenSet, Optional, Dict, Any

import numpy as np


class ReweightedView:
    """
    weights[e] is the non-negative cost w^t of oriented slot e used by Prim/Dijkstra.
    forced holds vertices predicted in the tree; penalty is the constant C.
    """

    def __init__(self, weights: np.ndarray, penalty: float, forced: Optional[FrozenSet[int]] = None):
        self.weights = np.asarray(weights, dtype=np.float64)
        self.penalty = float(penalty)
        self.forced: FrozenSet[int] = frozenset(forced or ())

    def validate(self) -> Dict[str, str]:
        errors = {}
        if np.any(self.weights < 0):
            errors["weights"] = "View costs must be non-negative"
        if self.penalty <= 0:
            errors["penalty"] = "Penalty C must be positive"
        return errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            "penalty": self.penalty,
            "forced": sorted(self.forced),
            "weights": self.weights.tolist(),
        }

    def __repr__(self) -> str:
        return f"ReweightedView(arcs={len(self.weights)}, forced={len(self.forced)}, C={self.penalty})"
