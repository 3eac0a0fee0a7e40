"""
Goemans-Williamson growth and pruning for the prize-collecting tree,
with prizes and weights shifted by the Max-Sum node fields.
"""
import logging
from typing import Optional, Dict, List, Tuple

import numpy as np

from ..models.engine_state import EngineState
from ..models.instance import Instance
from ..models.solution_tree import SolutionTree
from .maxsum_engine import MaxSumEngine
from .tree_service import prune_leaves

logger = logging.getLogger(__name__)


def node_margins(fields: np.ndarray) -> np.ndarray:
    """
    h_i = max over d > 0 of h_i(d), minus h_i(0).
    Positive when the fields put i in the tree, negative when they leave it out.
    """
    return fields[:, 1:].max(axis=1) - fields[:, 0]


def modified_costs(instance: Instance, margins: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Prizes get +C where h_i > 0; undirected edges get +C where either endpoint has h_i < 0.
    Edge cost is max(w_ij, w_ji) for asymmetric instances.
    """
    penalty = instance.penalty_constant()
    prizes = instance.prizes + penalty * (margins > 0)
    tails = instance.tails[0::2]
    heads = instance.heads[0::2]
    weights = np.maximum(instance.weights[0::2], instance.weights[1::2])
    weights = weights + penalty * ((margins[tails] < 0) | (margins[heads] < 0))
    return prizes, weights


def gw_growth(
    instance: Instance,
    prizes: np.ndarray,
    weights: np.ndarray,
) -> List[int]:
    """
    Dual growth with the root's cluster kept inactive.
    Returns the undirected edge ids (q, one per pair of slots) of the forest in merge order.
    """
    n = instance.num_vertices
    tails = instance.tails[0::2]
    heads = instance.heads[0::2]
    root = instance.root

    cluster = np.arange(n)
    active = np.ones(n, dtype=bool)
    active[root] = False
    budget = prizes.astype(np.float64).copy()
    # sum of duals of clusters containing v
    load = np.zeros(n)
    forest: List[int] = []
    members: Dict[int, List[int]] = {v: [v] for v in range(n)}

    while active[cluster].any():
        cu, cv = cluster[tails], cluster[heads]
        rate = active[cu].astype(float) + active[cv].astype(float)
        live = (cu != cv) & (rate > 0)
        edge_time = np.full(len(tails), np.inf)
        slack = np.maximum(weights[live] - load[tails[live]] - load[heads[live]], 0.0)
        edge_time[live] = slack / rate[live]

        roots = np.unique(cluster)
        live_clusters = roots[active[roots]]
        dead_time = budget[live_clusters]

        t_edge = edge_time.min() if len(edge_time) else np.inf
        t_dead = dead_time.min() if len(dead_time) else np.inf
        step = min(t_edge, t_dead)
        if not np.isfinite(step):
            break

        grows = active[cluster]
        load[grows] += step
        budget[live_clusters] -= step

        if t_dead <= t_edge:
            # lowest cluster label first among simultaneous deaths
            c = int(live_clusters[np.flatnonzero(dead_time == t_dead)[0]])
            active[c] = False
            budget[c] = 0.0
            continue

        q = int(np.flatnonzero(edge_time == t_edge)[0])
        a, b = int(cluster[tails[q]]), int(cluster[heads[q]])
        keep, gone = min(a, b), max(a, b)
        forest.append(q)
        has_root = int(cluster[root]) in (a, b)
        for v in members.pop(gone):
            cluster[v] = keep
            members[keep].append(v)
        budget[keep] = max(budget[a], 0.0) + max(budget[b], 0.0)
        active[gone] = False
        active[keep] = not has_root and budget[keep] > 0
    logger.debug("GW growth kept %d forest edges", len(forest))
    return forest


def strong_prune(
    instance: Instance,
    forest: List[int],
    prizes: np.ndarray,
    weights: np.ndarray,
) -> SolutionTree:
    """Keep the root's forest component and cut every subtree whose net worth is not positive."""
    root = instance.root
    tails = instance.tails[0::2]
    heads = instance.heads[0::2]
    tree = SolutionTree.from_undirected(root, [(int(tails[q]), int(heads[q])) for q in forest])
    cost: Dict[Tuple[int, int], float] = {}
    for q in forest:
        a, b = int(tails[q]), int(heads[q])
        cost[(a, b)] = cost[(b, a)] = float(weights[q])

    kids = tree.children()
    order = sorted(tree.depths().items(), key=lambda item: -item[1])
    worth: Dict[int, float] = {}
    for v, _ in order:
        worth[v] = float(prizes[v]) + sum(
            max(worth[c] - cost[(c, v)], 0.0) for c in kids[v]
        )

    parent: Dict[int, int] = {}
    stack = [root]
    while stack:
        u = stack.pop()
        for c in kids[u]:
            if worth[c] - cost[(c, u)] > 0:
                parent[c] = u
                stack.append(c)
    return SolutionTree(root, parent)


def gw_from_margins(instance: Instance, margins: np.ndarray) -> SolutionTree:
    """Run growth and pruning on the costs shifted by the given node margins."""
    prizes, weights = modified_costs(instance, margins)
    forest = gw_growth(instance, prizes, weights)
    pruned = strong_prune(instance, forest, prizes, weights)
    return prune_leaves(instance, pruned)


def extract_gw(instance: Instance, snapshot: EngineState, engine: Optional[MaxSumEngine] = None) -> SolutionTree:
    """The W heuristic: GW guided by the node fields of the snapshot."""
    engine = engine or MaxSumEngine()
    return gw_from_margins(instance, node_margins(engine.node_fields(snapshot)))


def plain_gw(instance: Instance) -> SolutionTree:
    """GW on the unmodified instance (max(w_ij, w_ji) edge costs)."""
    weights = np.maximum(instance.weights[0::2], instance.weights[1::2])
    forest = gw_growth(instance, instance.prizes, weights)
    return prune_leaves(instance, strong_prune(instance, forest, instance.prizes, weights))
