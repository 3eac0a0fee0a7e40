"""
Energy, tree <-> representation maps and the gap metric.
"""
import math

import numpy as np
import pytest

from steinertreesolver.errors import DepthBoundError, GapDomainError, StructuralError
from steinertreesolver.models import FLAT, NORMAL, Instance, Representation, SolutionTree
from steinertreesolver.services.tree_service import (
    energy,
    gap,
    is_feasible,
    prune_leaves,
    representation_energy,
    representation_to_subgraph,
    tree_to_representation,
    validate_representation,
)


@pytest.fixture
def branched_tree():
    return SolutionTree(2, {3: 2, 4: 3, 5: 4, 0: 5, 1: 5})


def _depth(instance, rep, i, j):
    return int(rep.depth[instance.edge_id(i, j)])


class TestEnergy:
    def test_two_node(self, two_node):
        assert energy(two_node, SolutionTree.single(0)) == 5.0
        assert energy(two_node, SolutionTree(0, {1: 0})) == 3.0

    def test_path(self, path3):
        assert energy(path3, SolutionTree.single(0)) == 10.0
        assert energy(path3, SolutionTree(0, {1: 0, 2: 1})) == 3.0
        assert energy(path3, SolutionTree(0, {1: 0})) == 11.0

    def test_uses_the_child_to_parent_weight(self):
        inst = Instance.from_edges(2, [(0, 1, 7.0, 2.0)], prizes=[0.0, 10.0], root=0)
        assert energy(inst, SolutionTree(0, {1: 0})) == 2.0

    def test_invalid_tree_raises(self, path3):
        with pytest.raises(StructuralError):
            energy(path3, SolutionTree(0, {2: 0}))

    def test_spg_feasibility(self, triangle_spg):
        assert not is_feasible(triangle_spg, SolutionTree(0, {1: 0}))
        assert is_feasible(triangle_spg, SolutionTree(0, {1: 0, 2: 0}))


class TestRepresentation:
    def test_normal_depths_are_hop_counts(self, branched, branched_tree):
        rep = tree_to_representation(branched, branched_tree, NORMAL, 4)
        assert _depth(branched, rep, 3, 2) == 1
        assert _depth(branched, rep, 4, 3) == 2
        assert _depth(branched, rep, 5, 4) == 3
        assert _depth(branched, rep, 0, 5) == 4
        assert _depth(branched, rep, 1, 5) == 4
        assert _depth(branched, rep, 2, 3) == -1
        assert _depth(branched, rep, 6, 7) == 0
        assert validate_representation(branched, rep, NORMAL)

    def test_normal_depth_bound(self, branched, branched_tree):
        with pytest.raises(DepthBoundError):
            tree_to_representation(branched, branched_tree, NORMAL, 3)

    def test_flat_depths_skip_prize_free_relays(self, branched, branched_tree):
        rep = tree_to_representation(branched, branched_tree, FLAT, 3)
        assert _depth(branched, rep, 3, 2) == 1
        assert _depth(branched, rep, 4, 3) == 2
        assert _depth(branched, rep, 5, 4) == 2
        assert _depth(branched, rep, 0, 5) == 3
        assert _depth(branched, rep, 1, 5) == 3
        assert validate_representation(branched, rep, FLAT)
        assert not validate_representation(branched, rep, NORMAL)

    def test_flat_relay_needs_a_prize_free_vertex(self, path3):
        # a carries a prize, so b sits one level below it
        inst = path3.with_prizes([0.0, 4.0, 10.0])
        rep = tree_to_representation(inst, SolutionTree(0, {1: 0, 2: 1}), FLAT, 2)
        assert rep.depth.tolist() == [-1, 1, -2, 2]

    def test_flat_chain_shares_depth_through_prize_free_vertices(self, chain5):
        tree = SolutionTree(0, {1: 0, 2: 1, 3: 2, 4: 3})
        rep = tree_to_representation(chain5, tree, FLAT, 4)
        assert [_depth(chain5, rep, c, p) for c, p in tree.edges()] == [1, 2, 2, 2]
        assert validate_representation(chain5, rep, FLAT)
        # the uncompacted tail is still a valid flat assignment
        loose = rep.depth.copy()
        loose[chain5.edge_id(4, 3)] = 3
        loose[chain5.edge_id(3, 4)] = -3
        assert validate_representation(chain5, Representation(loose, 4), FLAT)

    def test_constant_depth_relay_needs_prize_zero(self, path3):
        rep = Representation(np.array([-1, 1, -1, 1]), 2)
        assert validate_representation(path3, rep, FLAT)
        assert not validate_representation(path3, rep, NORMAL)
        assert not validate_representation(path3.with_prizes([0.0, 4.0, 10.0]), rep, FLAT)

    def test_round_trip_recovers_the_tree(self, branched, branched_tree):
        for mode, bound in ((NORMAL, 4), (FLAT, 3)):
            rep = tree_to_representation(branched, branched_tree, mode, bound)
            tree, cycles = representation_to_subgraph(branched, rep, mode)
            assert tree == branched_tree
            assert not cycles

    def test_detached_flat_cycle(self, branched, branched_tree):
        rep = tree_to_representation(branched, branched_tree, FLAT, 3)
        depth = rep.depth.copy()
        for i, j in ((6, 7), (7, 8), (8, 6)):
            depth[branched.edge_id(i, j)] = 2
            depth[branched.edge_id(j, i)] = -2
        with_cycle = Representation(depth, 3)
        assert validate_representation(branched, with_cycle, FLAT)
        assert not validate_representation(branched, with_cycle, NORMAL)
        tree, cycles = representation_to_subgraph(branched, with_cycle, FLAT)
        assert tree == branched_tree
        assert cycles == frozenset({(6, 7), (7, 8), (8, 6)})
        assert representation_energy(branched, with_cycle, FLAT) == pytest.approx(8.0)
        assert representation_energy(branched, with_cycle, NORMAL) == math.inf
        with pytest.raises(StructuralError):
            representation_to_subgraph(branched, with_cycle, NORMAL)

    def test_representation_energy_matches_tree_energy(self, branched, branched_tree):
        rep = tree_to_representation(branched, branched_tree, NORMAL, 4)
        assert representation_energy(branched, rep, NORMAL) == energy(branched, branched_tree) == 5.0

    def test_zero_vector_is_the_root_alone(self, path3):
        rep = Representation.zeros(path3.num_arcs, 2)
        tree, _ = representation_to_subgraph(path3, rep)
        assert tree == SolutionTree.single(0)
        assert representation_energy(path3, rep, NORMAL) == 10.0

    def test_two_parents_are_incompatible(self, path3):
        # a points to r and to b at once
        rep = Representation(np.array([-1, 1, 1, -1]), 2)
        assert not validate_representation(path3, rep, NORMAL)

    def test_root_only_takes_depth_one_children(self, two_node):
        rep = Representation(np.array([-2, 2]), 2)
        assert not validate_representation(two_node, rep, NORMAL)


class TestPruneLeaves:
    def test_chain_is_pruned_back_to_the_root(self, path3):
        inst = path3.with_prizes([0.0, 0.0, 1.0])
        pruned = prune_leaves(inst, SolutionTree(0, {1: 0, 2: 1}))
        assert pruned == SolutionTree.single(0)

    def test_profitable_leaf_is_kept(self, path3):
        tree = SolutionTree(0, {1: 0, 2: 1})
        assert prune_leaves(path3, tree) == tree


class TestGap:
    def test_values(self):
        assert round(gap(121056, 121091), 2) == -0.03
        assert gap(11, 10) == pytest.approx(10.0)
        assert gap(7.5, 7.5) == 0.0

    def test_zero_reference(self):
        with pytest.raises(GapDomainError):
            gap(1.0, 0.0)
