"""
Tree services: energy functional, tree <-> depth representation maps,
compatibility checks and the gap metric.
"""
import logging
import math
from collections import deque
from typing import Optional, Dict, FrozenSet, Tuple, List

import numpy as np

from ..errors import StructuralError, DepthBoundError, GapDomainError
from ..models.engine_state import NORMAL, FLAT
from ..models.instance import Instance
from ..models.representation import Representation
from ..models.solution_tree import SolutionTree

logger = logging.getLogger(__name__)


def energy(instance: Instance, tree: SolutionTree) -> float:
    """Sum of tree edge weights plus prizes of the vertices left out."""
    errors = tree.validate(instance)
    if errors:
        raise StructuralError("; ".join(errors.values()))
    cost = sum(instance.weight(child, parent) for child, parent in tree.edges())
    outside = np.ones(instance.num_vertices, dtype=bool)
    outside[list(tree.members)] = False
    return float(cost + instance.prizes[outside].sum())


def is_feasible(instance: Instance, tree: SolutionTree) -> bool:
    """Every SPG terminal is in the tree."""
    return all(t in tree.members for t in instance.terminals())


def gap(x: float, y: float) -> float:
    """Percentage gap (x - y) / y * 100; negative means x is better."""
    if y == 0:
        raise GapDomainError("gap is undefined against a zero reference energy")
    return (x - y) / y * 100.0


def _flat_depths(instance: Instance, tree: SolutionTree) -> Dict[int, int]:
    """Most compact depths: no increment below prize-0 vertices of tree degree 2."""
    kids = tree.children()
    depth = {tree.root: 0}
    queue = deque([tree.root])
    while queue:
        u = queue.popleft()
        for v in kids[u]:
            if u != tree.root and instance.prizes[u] == 0 and tree.degree(u) == 2:
                depth[v] = depth[u]
            else:
                depth[v] = depth[u] + 1
            queue.append(v)
    return depth


def tree_to_representation(instance: Instance, tree: SolutionTree, mode: str, bound: int) -> Representation:
    errors = tree.validate(instance)
    if errors:
        raise StructuralError("; ".join(errors.values()))
    depths = tree.depths() if mode == NORMAL else _flat_depths(instance, tree)
    deepest = max(depths.values())
    if deepest > bound:
        raise DepthBoundError(f"tree needs depth {deepest} in {mode} mode but D={bound}")
    d = np.zeros(instance.num_arcs, dtype=np.int64)
    for child, parent in tree.edges():
        e = instance.edge_id(child, parent)
        d[e] = depths[child]
        d[e ^ 1] = -depths[child]
    return Representation(d, bound)


def _vertex_compatible(out: np.ndarray, prize: float, is_root: bool, mode: str) -> bool:
    """psi_i (or psi'_i in flat mode) over the outgoing values d_ik of one vertex."""
    if is_root:
        return bool(np.all((out == 0) | (out == -1)))
    nonzero = out[out != 0]
    if nonzero.size == 0:
        return True
    parents = nonzero[nonzero > 0]
    if parents.size != 1:
        return False
    d = parents[0]
    children = nonzero[nonzero < 0]
    if np.all(children == -(d + 1)):
        return True
    return mode == FLAT and prize == 0 and children.size == 1 and children[0] == -d


def validate_representation(instance: Instance, rep: Representation, mode: str) -> bool:
    if instance.root is None or len(rep.depth) != instance.num_arcs:
        return False
    if rep.validate():
        return False
    for i in range(instance.num_vertices):
        out = rep.depth[instance.incident_edges(i)]
        if not _vertex_compatible(out, instance.prizes[i], i == instance.root, mode):
            return False
    return True


def representation_to_subgraph(
    instance: Instance,
    rep: Representation,
    mode: Optional[str] = None,
) -> Tuple[SolutionTree, FrozenSet[Tuple[int, int]]]:
    """
    Inverse map. Returns the root's component as a tree and, under the flat model,
    the oriented edges of any detached constant-depth cycles.
    """
    if instance.root is None:
        raise StructuralError("instance has no root")
    modes = [mode] if mode else [NORMAL, FLAT]
    if not any(validate_representation(instance, rep, m) for m in modes):
        raise StructuralError(f"representation is not compatible under {', '.join(modes)} rules")

    parent: Dict[int, int] = {}
    for i, j in rep.tree_edges(instance.tails, instance.heads):
        parent[i] = j
    kids: Dict[int, List[int]] = {}
    for child, par in parent.items():
        kids.setdefault(par, []).append(child)

    reached = {instance.root}
    queue = deque([instance.root])
    while queue:
        u = queue.popleft()
        for v in kids.get(u, []):
            if v not in reached:
                reached.add(v)
                queue.append(v)

    tree = SolutionTree(instance.root, {c: p for c, p in parent.items() if c in reached})
    cycles = frozenset((c, p) for c, p in parent.items() if c not in reached)
    if cycles:
        logger.debug("representation carries %d detached cycle edges", len(cycles))
    return tree, cycles


def representation_energy(instance: Instance, rep: Representation, mode: str) -> float:
    """H(d): infinite when incompatible, otherwise prizes of idle vertices plus used weights."""
    if not validate_representation(instance, rep, mode):
        return math.inf
    used = rep.depth > 0
    cost = float(instance.weights[used].sum())
    for i in range(instance.num_vertices):
        if i != instance.root and not np.any(rep.depth[instance.incident_edges(i)]):
            cost += float(instance.prizes[i])
    return cost


def prune_leaves(instance: Instance, tree: SolutionTree) -> SolutionTree:
    """Repeatedly drop leaves i != r whose edge weight exceeds their prize (original w and c)."""
    parent = dict(tree.parent)
    child_count: Dict[int, int] = {v: 0 for v in tree.members}
    for p in parent.values():
        child_count[p] += 1
    stack = sorted(v for v in tree.members if v != tree.root and child_count[v] == 0)
    while stack:
        leaf = stack.pop()
        par = parent[leaf]
        if instance.weight(leaf, par) <= instance.prizes[leaf]:
            continue
        del parent[leaf]
        child_count[par] -= 1
        if par != tree.root and child_count[par] == 0:
            stack.append(par)
    return SolutionTree(tree.root, parent)
