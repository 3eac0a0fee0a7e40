"""
Instance entity: the rooted Steiner tree input.
Weighted graph with one slot per oriented edge, node prizes and an optional root.
"""
from typing import Optional, List, Dict, Any, Iterable, Sequence, Tuple

import numpy as np

from ..config import VALID_KINDS
from ..errors import InstanceError, StructuralError


# (i, j, w_ij, w_ji) with dense 0-based ids
EdgeSpec = Tuple[int, int, float, float]


def spg_sentinel(weights: np.ndarray, finite_prizes: np.ndarray) -> float:
    """Prize that makes leaving a terminal out always worse than any tree."""
    return float(np.sum(weights) + np.sum(finite_prizes) + 1.0)


class Instance:
    """
    Immutable problem instance.
    Undirected edge q is stored as oriented slots 2q = (a, b) and 2q + 1 = (b, a),
    so the reverse of slot e is e ^ 1 and w_ab may differ from w_ba.
    """

    def __init__(
        self,
        num_vertices: int,
        tails: np.ndarray,
        heads: np.ndarray,
        weights: np.ndarray,
        prizes: np.ndarray,
        root: Optional[int] = None,
        kind: str = "RSTP",
        terminal_mask: Optional[np.ndarray] = None,
        external_ids: Optional[Sequence[int]] = None,
        name: str = "",
    ):
        self._n = int(num_vertices)
        self._tails = np.asarray(tails, dtype=np.int64)
        self._heads = np.asarray(heads, dtype=np.int64)
        self._weights = np.asarray(weights, dtype=np.float64)
        self._prizes = np.asarray(prizes, dtype=np.float64)
        self._root = None if root is None else int(root)
        self._kind = kind
        if terminal_mask is None:
            terminal_mask = np.zeros(self._n, dtype=bool)
        self._terminal_mask = np.asarray(terminal_mask, dtype=bool)
        self._external_ids = list(external_ids) if external_ids is not None else list(range(1, self._n + 1))
        self.name = name

        errors = self.validate()
        if errors:
            raise InstanceError.from_errors(errors)

        for arr in (self._tails, self._heads, self._weights, self._prizes, self._terminal_mask):
            arr.setflags(write=False)

        # CSR incidence: slots leaving each vertex, in insertion order
        order = np.argsort(self._tails, kind="stable")
        counts = np.bincount(self._tails, minlength=self._n)
        self._offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self._incident = order.astype(np.int64)
        self._edge_index: Dict[Tuple[int, int], int] = {
            (int(t), int(h)): e for e, (t, h) in enumerate(zip(self._tails, self._heads))
        }
        self._internal_ids = {ext: i for i, ext in enumerate(self._external_ids)}

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[EdgeSpec],
        prizes: Optional[Sequence[float]] = None,
        root: Optional[int] = None,
        kind: str = "RSTP",
        terminals: Optional[Iterable[int]] = None,
        external_ids: Optional[Sequence[int]] = None,
        name: str = "",
    ) -> "Instance":
        """
        Build an instance from (i, j, w_ij, w_ji) tuples.
        Vertices listed in `terminals` get the SPG sentinel prize.
        """
        tails: List[int] = []
        heads: List[int] = []
        weights: List[float] = []
        seen = set()
        for i, j, w_ij, w_ji in edges:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InstanceError(f"duplicate edge ({i}, {j})")
            seen.add(key)
            tails.extend((i, j))
            heads.extend((j, i))
            weights.extend((float(w_ij), float(w_ji)))

        prize_arr = np.zeros(num_vertices, dtype=np.float64)
        if prizes is not None:
            prize_arr[:] = np.asarray(prizes, dtype=np.float64)
        mask = np.zeros(num_vertices, dtype=bool)
        if terminals is not None:
            for t in terminals:
                mask[t] = True
        if mask.any():
            prize_arr[mask] = spg_sentinel(np.asarray(weights), prize_arr[~mask])

        return cls(
            num_vertices,
            np.asarray(tails, dtype=np.int64),
            np.asarray(heads, dtype=np.int64),
            np.asarray(weights, dtype=np.float64),
            prize_arr,
            root=root,
            kind=kind,
            terminal_mask=mask,
            external_ids=external_ids,
            name=name,
        )

    def validate(self) -> Dict[str, str]:
        """
        Validate the instance data.
        Returns a dictionary of field names to error messages.
        """
        errors = {}
        if self._n < 1:
            errors["vertices"] = "Instance needs at least one vertex"
        if self._kind not in VALID_KINDS:
            errors["kind"] = f"Kind must be one of {VALID_KINDS}"
        if not (len(self._tails) == len(self._heads) == len(self._weights)) or len(self._tails) % 2:
            errors["edges"] = "Edge arrays must hold matching oriented pairs"
            return errors
        if len(self._tails):
            if self._tails.min() < 0 or max(self._tails.max(), self._heads.max()) >= self._n:
                errors["edges"] = "Edge endpoint out of range"
            elif np.any(self._tails == self._heads):
                errors["edges"] = "Self loops are not allowed"
            elif np.any(self._tails[0::2] != self._heads[1::2]) or np.any(self._heads[0::2] != self._tails[1::2]):
                errors["edges"] = "Oriented slots must come in reverse pairs"
            if not np.all(np.isfinite(self._weights)) or np.any(self._weights <= 0):
                errors["weights"] = "Every edge weight must be strictly positive"
        if len(self._prizes) != self._n:
            errors["prizes"] = "One prize per vertex is required"
        elif not np.all(np.isfinite(self._prizes)) or np.any(self._prizes < 0):
            errors["prizes"] = "Prizes must be finite and non-negative"
        if len(self._external_ids) != self._n:
            errors["external_ids"] = "One external id per vertex is required"
        if self._root is not None and not 0 <= self._root < self._n:
            errors["root"] = "Root out of range"
        if self._kind == "RSTP" and self._root is None:
            errors["root"] = "RSTP instances need a root"
        return errors

    def _derive(self, **changes: Any) -> "Instance":
        fields = dict(
            num_vertices=self._n,
            tails=self._tails,
            heads=self._heads,
            weights=self._weights,
            prizes=self._prizes,
            root=self._root,
            kind=self._kind,
            terminal_mask=self._terminal_mask,
            external_ids=self._external_ids,
            name=self.name,
        )
        fields.update(changes)
        return Instance(**fields)

    def with_root(self, root: int) -> "Instance":
        return self._derive(root=root)

    def with_weights(self, weights: np.ndarray) -> "Instance":
        return self._derive(weights=np.array(weights, dtype=np.float64))

    def with_prizes(self, prizes: np.ndarray) -> "Instance":
        return self._derive(prizes=np.array(prizes, dtype=np.float64))

    def with_terminal_mask(self, mask: np.ndarray) -> "Instance":
        return self._derive(terminal_mask=np.array(mask, dtype=bool))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        """Number of vertices, internal ids 0..n-1."""
        return self._n

    @property
    def num_edges(self) -> int:
        """Number of undirected edges."""
        return len(self._tails) // 2

    @property
    def num_arcs(self) -> int:
        """Number of oriented slots, twice the edge count."""
        return len(self._tails)

    @property
    def tails(self) -> np.ndarray:
        """Tail vertex of every oriented slot."""
        return self._tails

    @property
    def heads(self) -> np.ndarray:
        """Head vertex of every oriented slot."""
        return self._heads

    @property
    def weights(self) -> np.ndarray:
        """Weight of every oriented slot: weights[(i, j)] is w_ij."""
        return self._weights

    @property
    def prizes(self) -> np.ndarray:
        """Prize c_v per vertex; SPG terminals carry the sentinel."""
        return self._prizes

    @property
    def root(self) -> Optional[int]:
        """Internal id of the root, or None before rooting."""
        return self._root

    @property
    def kind(self) -> str:
        """One of SPG, PCSPG, RPCST, RSTP."""
        return self._kind

    @property
    def terminal_mask(self) -> np.ndarray:
        """Boolean mask of SPG terminals."""
        return self._terminal_mask

    @property
    def external_ids(self) -> List[int]:
        """Ids as read from the file, indexed by internal id."""
        return list(self._external_ids)

    def external_id(self, vertex: int) -> int:
        """Returns the file id of an internal vertex."""
        return self._external_ids[vertex]

    def internal_id(self, external: int) -> int:
        """Returns the internal id of a file vertex id."""
        return self._internal_ids[external]

    def incident_edges(self, vertex: int) -> np.ndarray:
        """Oriented slots (vertex, k) for every neighbor k."""
        return self._incident[self._offsets[vertex]:self._offsets[vertex + 1]]

    def neighbors(self, vertex: int) -> np.ndarray:
        """Heads of the slots leaving vertex."""
        return self._heads[self.incident_edges(vertex)]

    def degree(self, vertex: int) -> int:
        return int(self._offsets[vertex + 1] - self._offsets[vertex])

    @staticmethod
    def reverse(edge: int) -> int:
        """Slot of the opposite orientation: (i, j) <-> (j, i)."""
        return edge ^ 1

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self._edge_index

    def edge_id(self, i: int, j: int) -> int:
        """
        Returns the oriented slot of (i, j).
        Raises StructuralError when i and j are not adjacent.
        """
        try:
            return self._edge_index[(i, j)]
        except KeyError:
            raise StructuralError(f"no edge ({i}, {j}) in instance") from None

    def weight(self, i: int, j: int) -> float:
        """w_ij, the cost of i hanging below j."""
        return float(self._weights[self.edge_id(i, j)])

    def undirected_edges(self) -> List[Tuple[int, int]]:
        """One (tail, head) pair per edge, in edge-id order."""
        return [(int(self._tails[e]), int(self._heads[e])) for e in range(0, self.num_arcs, 2)]

    def terminals(self) -> List[int]:
        """SPG terminals (vertices carrying the sentinel prize)."""
        return [int(v) for v in np.flatnonzero(self._terminal_mask)]

    def profitable(self) -> List[int]:
        """K = {v != r : c_v > 0}."""
        return [int(v) for v in np.flatnonzero(self._prizes > 0) if v != self._root]

    def finite_prize_sum(self) -> float:
        """Sum of prizes, sentinels excluded."""
        return float(np.sum(self._prizes[~self._terminal_mask]))

    def total_weight(self) -> float:
        """Sum over oriented slots."""
        return float(np.sum(self._weights))

    def max_weight(self) -> float:
        return float(self._weights.max()) if len(self._weights) else 0.0

    def penalty_constant(self) -> float:
        """C = sum of weights + sum of finite prizes + 1."""
        return self.total_weight() + self.finite_prize_sum() + 1.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self._kind,
            "vertices": self._n,
            "edges": self.num_edges,
            "terminals": len(self.terminals()),
            "profitable": len(self.profitable()),
            "root": self._root,
        }

    def __repr__(self) -> str:
        return f"Instance(name='{self.name}', kind={self._kind}, |V|={self._n}, |E|={self.num_edges}, root={self._root})"
