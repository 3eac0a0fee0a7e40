"""
Oracle: independent ground truth for small instances.
Brute-force optimum, Kruskal MST, Bellman-Ford distances, and direct
per-vertex maximization of the Max-Sum update.
"""
import itertools
import logging
import math
from typing import Optional, Dict, Iterator, List, Tuple

import networkx as nx
import numpy as np

from .. import config
from ..errors import OracleBudgetError
from ..models.engine_state import EngineState, FLAT
from ..models.fields import NEG_INF
from ..models.instance import Instance
from ..models.reweighted_view import ReweightedView
from ..models.solution_tree import SolutionTree
from .tree_service import energy

logger = logging.getLogger(__name__)


def _rooted_digraph(instance: Instance, members) -> nx.DiGraph:
    """Arcs parent -> child weighted by the child-to-parent weight, restricted to members."""
    graph = nx.DiGraph()
    graph.add_nodes_from(members)
    for e in range(instance.num_arcs):
        child, parent = int(instance.tails[e]), int(instance.heads[e])
        if child in members and parent in members and child != instance.root:
            graph.add_edge(parent, child, weight=float(instance.weights[e]))
    return graph


def _root_component(instance: Instance) -> Tuple[List[int], List[int]]:
    """Vertices and undirected edge ids (q, one per pair of slots) of the root's component."""
    members = sorted(nx.node_connected_component(_undirected(instance, None), instance.root))
    inside = set(members)
    edges = [q for q in range(instance.num_edges) if int(instance.tails[2 * q]) in inside]
    return members, edges


def _best_subtree(instance: Instance, spanning: SolutionTree) -> SolutionTree:
    """Cheapest tree containing the root inside a rooted spanning tree: keep children with positive net worth."""
    kids = spanning.children()
    worth: Dict[int, float] = {}
    for v, _ in sorted(spanning.depths().items(), key=lambda item: -item[1]):
        worth[v] = float(instance.prizes[v]) + sum(
            max(worth[c] - instance.weight(c, v), 0.0) for c in kids[v]
        )
    parent: Dict[int, int] = {}
    stack = [spanning.root]
    while stack:
        u = stack.pop()
        for c in kids[u]:
            if worth[c] - instance.weight(c, u) > 0:
                parent[c] = u
                stack.append(c)
    return SolutionTree(spanning.root, parent)


def _by_vertex_subsets(instance: Instance, members: List[int]) -> Iterator[SolutionTree]:
    """Edmonds' cheapest arborescence of every member subset containing the root."""
    root = instance.root
    others = [v for v in members if v != root]
    for size in range(1, len(others) + 1):
        for subset in itertools.combinations(others, size):
            chosen = {root, *subset}
            graph = _rooted_digraph(instance, chosen)
            try:
                arb = nx.minimum_spanning_arborescence(graph, attr="weight", preserve_attrs=True)
            except nx.NetworkXException:
                continue
            if len(arb) == len(chosen):
                yield SolutionTree(root, {child: parent for parent, child in arb.edges()})


def _by_spanning_trees(instance: Instance, members: List[int], edges: List[int]) -> Iterator[SolutionTree]:
    """
    Every spanning tree of the component, as the complement of a set of |E| - |V| + 1 edges,
    each reduced to its best subtree. Any tree containing the root lies in one of them.
    """
    surplus = len(edges) - len(members) + 1
    for dropped in itertools.combinations(edges, surplus):
        removed = set(dropped)
        kept = [q for q in edges if q not in removed]
        forest = nx.utils.UnionFind(members)
        acyclic = True
        for q in kept:
            a, b = int(instance.tails[2 * q]), int(instance.heads[2 * q])
            if forest[a] == forest[b]:
                acyclic = False
                break
            forest.union(a, b)
        if not acyclic:
            continue
        pairs = [(int(instance.tails[2 * q]), int(instance.heads[2 * q])) for q in kept]
        yield _best_subtree(instance, SolutionTree.from_undirected(instance.root, pairs))


def brute_force_optimum(instance: Instance) -> Tuple[SolutionTree, float]:
    """
    Minimum-energy tree containing the root, by exhaustive enumeration over the root's component.
    Small components enumerate vertex subsets, each spanned by Edmonds' cheapest arborescence;
    larger but sparse ones enumerate spanning trees. Vertices outside the component always pay their prize.
    Ties keep the lexicographically smallest edge set.
    Raises OracleBudgetError when the component exceeds both budgets.
    """
    members, edges = _root_component(instance)
    if len(members) <= config.ORACLE_MAX_VERTICES:
        candidates = _by_vertex_subsets(instance, members)
    elif len(edges) <= config.ORACLE_MAX_EDGES:
        candidates = _by_spanning_trees(instance, members, edges)
    else:
        raise OracleBudgetError(
            f"|V|={len(members)}, |E|={len(edges)} in the root's component exceeds the enumeration budget"
        )
    best_tree = SolutionTree.single(instance.root)
    best_cost = energy(instance, best_tree)
    for tree in candidates:
        cost = energy(instance, tree)
        if cost < best_cost - 1e-12 or (abs(cost - best_cost) <= 1e-12 and tree.edges() < best_tree.edges()):
            best_tree, best_cost = tree, cost
    logger.debug("brute force optimum %.6f over %d component vertices", best_cost, len(members))
    return best_tree, best_cost


def _undirected(instance: Instance, weights: Optional[np.ndarray]) -> nx.Graph:
    source = instance.weights if weights is None else weights
    graph = nx.Graph()
    graph.add_nodes_from(range(instance.num_vertices))
    for e in range(0, instance.num_arcs, 2):
        graph.add_edge(int(instance.tails[e]), int(instance.heads[e]),
                       weight=float(max(source[e], source[e + 1])))
    return graph


def reference_mst(instance: Instance, view: Optional[ReweightedView] = None) -> Tuple[SolutionTree, float]:
    """Kruskal spanning tree of the root's component, with its total cost."""
    graph = _undirected(instance, None if view is None else view.weights)
    component = nx.node_connected_component(graph, instance.root)
    mst = nx.minimum_spanning_tree(graph.subgraph(component), algorithm="kruskal")
    cost = sum(d["weight"] for _, _, d in mst.edges(data=True))
    return SolutionTree.from_undirected(instance.root, mst.edges()), float(cost)


def reference_sssp(instance: Instance, source: int, view: Optional[ReweightedView] = None) -> Dict[int, float]:
    """
    Bellman-Ford distances from source, moving from u to v at the cost of slot (v, u),
    the orientation a tree grown from source would pay.
    """
    weights = instance.weights if view is None else view.weights
    graph = nx.DiGraph()
    graph.add_nodes_from(range(instance.num_vertices))
    for e in range(instance.num_arcs):
        u, v = int(instance.tails[e]), int(instance.heads[e])
        graph.add_edge(u, v, weight=float(weights[e ^ 1]))
    return dict(nx.single_source_bellman_ford_path_length(graph, source, weight="weight"))


def _psi(values: Tuple[int, ...], is_root: bool, prize: float, flat: bool) -> bool:
    """Compatibility of the outgoing depths d_ik of one vertex."""
    if is_root:
        return all(v in (0, -1) for v in values)
    nonzero = [v for v in values if v != 0]
    if not nonzero:
        return True
    parents = [v for v in nonzero if v > 0]
    if len(parents) != 1:
        return False
    d = parents[0]
    children = [v for v in nonzero if v < 0]
    if all(c == -(d + 1) for c in children):
        return True
    return flat and prize == 0 and children == [-d]


def exhaustive_update(instance: Instance, state: EngineState, vertex: int) -> np.ndarray:
    """
    Unnormalized h_ij rows for every slot (vertex, j), by direct maximization over all
    neighbor depth tuples. Uses the same incoming fields (with reinforcement) as the engine.
    """
    slots = instance.incident_edges(vertex)
    deg = len(slots)
    D = state.depth
    if deg > config.EXHAUSTIVE_MAX_DEGREE or D > config.EXHAUSTIVE_MAX_DEPTH:
        raise OracleBudgetError(f"degree {deg} / depth {D} exceeds the exhaustive budget")
    X = state.incoming(vertex)
    w = state.weights[slots]
    prize = float(instance.prizes[vertex])
    is_root = vertex == instance.root
    flat = state.mode == FLAT
    depths = range(-D, D + 1)
    out = np.full((deg, 2 * D + 1), NEG_INF)
    for j in range(deg):
        others = [k for k in range(deg) if k != j]
        for d_ij in depths:
            best = -math.inf
            for combo in itertools.product(depths, repeat=len(others)):
                # combo holds d_ik; the incoming field of k is indexed by d_ki = -d_ik
                values = [0] * deg
                values[j] = d_ij
                for k, d_ik in zip(others, combo):
                    values[k] = d_ik
                if not _psi(tuple(values), is_root, prize, flat):
                    continue
                score = 0.0
                for k, d_ik in zip(others, combo):
                    score += X[k, D - d_ik]
                score -= sum(w[k] for k in range(deg) if values[k] > 0)
                if not is_root and not any(values):
                    score -= prize
                best = max(best, score)
            if best > NEG_INF / 2:
                out[j, D + d_ij] = best
    return out
