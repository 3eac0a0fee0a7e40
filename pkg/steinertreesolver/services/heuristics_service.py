"""
Heuristics: anytime feasible trees built from a field snapshot.
Edge and node reweighting, pruned Prim MST and pruned Dijkstra SPT, and best_of.
"""
import heapq
import logging
from typing import Optional, Dict, Iterable

import numpy as np

from ..errors import InfeasibleError
from ..models.engine_state import EngineState
from ..models.fields import FORBIDDEN
from ..models.instance import Instance
from ..models.reweighted_view import ReweightedView
from ..models.solution_tree import SolutionTree
from ..models.trace_record import Extraction
from .goemans_williamson import extract_gw
from .maxsum_engine import MaxSumEngine
from .tree_service import prune_leaves

logger = logging.getLogger(__name__)


def reweight_edges(snapshot: EngineState) -> ReweightedView:
    """
    Cost of slot e is -max_{d != 0} H_e(d): zero when some nonzero depth attains
    the row maximum, positive when only d = 0 does.
    """
    inst = snapshot.instance
    D = snapshot.depth
    penalty = inst.penalty_constant()
    nonzero = np.delete(snapshot.local, D, axis=1)
    best = nonzero.max(axis=1) if nonzero.shape[1] else np.full(inst.num_arcs, -np.inf)
    cost = np.where(best <= FORBIDDEN, penalty, np.maximum(-best, 0.0))
    return ReweightedView(cost, penalty)


def forced_vertices(snapshot: EngineState, fields: np.ndarray) -> np.ndarray:
    """Mask of vertices with max_{d>0} h_i(d) > h_i(0); the root is always in."""
    mask = fields[:, 1:].max(axis=1) > fields[:, 0]
    if snapshot.instance.root is not None:
        mask[snapshot.instance.root] = True
    return mask


def reweight_nodes(snapshot: EngineState, engine: Optional[MaxSumEngine] = None) -> ReweightedView:
    """Original weights, plus C on every edge with an endpoint outside the forced set."""
    engine = engine or MaxSumEngine()
    inst = snapshot.instance
    penalty = inst.penalty_constant()
    mask = forced_vertices(snapshot, engine.node_fields(snapshot))
    outside = ~mask[inst.tails] | ~mask[inst.heads]
    weights = inst.weights + penalty * outside
    return ReweightedView(weights, penalty, frozenset(int(v) for v in np.flatnonzero(mask)))


def _grow(instance: Instance, view: ReweightedView, shortest_path: bool) -> SolutionTree:
    """
    Rooted Prim (or Dijkstra) over the root's component. Attaching v below u
    costs view.weights[(v, u)], the child-to-parent orientation.
    """
    root = instance.root
    key = np.full(instance.num_vertices, np.inf)
    key[root] = 0.0
    parent: Dict[int, int] = {}
    done = np.zeros(instance.num_vertices, dtype=bool)
    heap = [(0.0, root, -1)]
    while heap:
        k, u, p = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if p >= 0:
            parent[u] = p
        slots = instance.incident_edges(u)
        for slot in slots:
            v = int(instance.heads[slot])
            if done[v]:
                continue
            cost = view.weights[slot ^ 1]
            candidate = k + cost if shortest_path else cost
            if candidate < key[v]:
                key[v] = candidate
                heapq.heappush(heap, (candidate, v, u))
    return SolutionTree(root, parent)


def extract_mst(instance: Instance, view: ReweightedView) -> SolutionTree:
    """
    Minimum spanning tree of the root's component under the view's weights,
    then leaf pruning against the original instance.
    Returns the pruned tree, never empty (the root alone at worst).
    """
    return prune_leaves(instance, _grow(instance, view, shortest_path=False))


def extract_spt(instance: Instance, view: ReweightedView) -> SolutionTree:
    """Shortest-path tree from the root under the view's weights, leaf-pruned like extract_mst."""
    return prune_leaves(instance, _grow(instance, view, shortest_path=True))


def best_of(extractions: Iterable[Extraction]) -> Extraction:
    """Minimum-energy feasible extraction; earliest wins ties."""
    best: Optional[Extraction] = None
    for candidate in extractions:
        if candidate.feasible and (best is None or candidate.energy < best.energy):
            best = candidate
    if best is None:
        raise InfeasibleError("no feasible tree has been extracted")
    return best


class HeuristicsService:
    """Runs the extraction a variant asks for on one snapshot."""

    def __init__(self, engine: Optional[MaxSumEngine] = None):
        self.engine = engine or MaxSumEngine()

    def extract(self, heuristic: str, snapshot: EngineState) -> SolutionTree:
        """
        Build a feasible tree from the snapshot with heuristic O, N, J or W.
        Raises ValueError for any other label.
        """
        inst = snapshot.instance
        if heuristic == "O":
            return extract_mst(inst, reweight_edges(snapshot))
        if heuristic == "N":
            return extract_mst(inst, reweight_nodes(snapshot, self.engine))
        if heuristic == "J":
            return extract_spt(inst, reweight_edges(snapshot))
        if heuristic == "W":
            return extract_gw(inst, snapshot, self.engine)
        raise ValueError(f"unknown heuristic '{heuristic}'")

