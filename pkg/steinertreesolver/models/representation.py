"""
Representation entity: antisymmetric depth vector d over oriented edges.
d_ij > 0 means edge (i, j) is in the tree, points to the root, and i sits d_ij hops deep.
"""
from typing import Dict, List, Tuple, Any

import numpy as np

from ..errors import StructuralError


class Representation:
    """Immutable depth vector indexed by the instance's oriented edge slots."""

    def __init__(self, depth: np.ndarray, bound: int):
        self.depth = np.array(depth, dtype=np.int64)
        self.bound = int(bound)
        errors = self.validate()
        if errors:
            raise StructuralError("; ".join(errors.values()))
        self.depth.setflags(write=False)

    @classmethod
    def zeros(cls, num_arcs: int, bound: int) -> "Representation":
        return cls(np.zeros(num_arcs, dtype=np.int64), bound)

    @classmethod
    def from_canonical(cls, canonical: np.ndarray, bound: int) -> "Representation":
        """Expand one value per undirected edge (slot 2q) into the antisymmetric pair."""
        depth = np.empty(2 * len(canonical), dtype=np.int64)
        depth[0::2] = canonical
        depth[1::2] = -np.asarray(canonical)
        return cls(depth, bound)

    def validate(self) -> Dict[str, str]:
        errors = {}
        if self.bound < 1:
            errors["bound"] = "Depth bound D must be at least 1"
        if len(self.depth) % 2:
            errors["depth"] = "Depth vector must cover oriented pairs"
            return errors
        if np.any(self.depth[0::2] != -self.depth[1::2]):
            errors["antisymmetry"] = "d_ij must equal -d_ji"
        if len(self.depth) and np.abs(self.depth).max() > self.bound:
            errors["bound"] = f"|d_ij| exceeds D={self.bound}"
        return errors

    def tree_edges(self, tails: np.ndarray, heads: np.ndarray) -> List[Tuple[int, int]]:
        """E_d oriented toward the root: (i, j) with d_ij > 0."""
        return [(int(tails[e]), int(heads[e])) for e in np.flatnonzero(self.depth > 0)]

    def is_zero(self) -> bool:
        return not np.any(self.depth)

    def to_dict(self) -> Dict[str, Any]:
        return {"bound": self.bound, "depth": self.depth.tolist()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.depth, other.depth)

    def __hash__(self) -> int:
        return hash((self.bound, self.depth.tobytes()))

    def __repr__(self) -> str:
        return f"Representation(D={self.bound}, nonzero={int(np.count_nonzero(self.depth))})"
