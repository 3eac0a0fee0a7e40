"""
Ground-truth helpers on hand instances.
"""
import numpy as np
import pytest

from steinertreesolver import config
from steinertreesolver.errors import OracleBudgetError
from steinertreesolver.models import FLAT, NORMAL, Instance, SolutionTree
from steinertreesolver.services.oracle_service import (
    brute_force_optimum,
    exhaustive_update,
    reference_mst,
    reference_sssp,
)

from .conftest import make_random_instance


class TestBruteForce:
    def test_two_node(self, two_node):
        tree, cost = brute_force_optimum(two_node)
        assert tree == SolutionTree(0, {1: 0})
        assert cost == 3.0

    def test_path(self, path3):
        tree, cost = brute_force_optimum(path3)
        assert tree == SolutionTree(0, {1: 0, 2: 1})
        assert cost == 3.0

    def test_leaving_everything_out_can_win(self, path3):
        tree, cost = brute_force_optimum(path3.with_prizes([0.0, 0.0, 1.0]))
        assert tree == SolutionTree.single(0)
        assert cost == 1.0

    def test_spg_triangle(self, triangle_spg):
        _, cost = brute_force_optimum(triangle_spg)
        assert cost == pytest.approx(2.0)

    def test_orientation_matters(self):
        inst = Instance.from_edges(
            3, [(0, 1, 1.0, 9.0), (0, 2, 1.0, 1.0), (1, 2, 1.0, 1.0)], prizes=[0.0, 20.0, 20.0], root=0
        )
        tree, cost = brute_force_optimum(inst)
        assert cost == pytest.approx(2.0)
        assert tree.parent[1] == 2

    def test_budget(self):
        inst = make_random_instance(np.random.default_rng(0), 15, 10)
        with pytest.raises(OracleBudgetError):
            brute_force_optimum(inst)

    def test_long_sparse_path_is_enumerated(self):
        n = 21
        prizes = np.zeros(n)
        prizes[10], prizes[20] = 15.0, 5.0
        inst = Instance.from_edges(n, [(v, v + 1, 1.0, 1.0) for v in range(n - 1)], prizes=prizes, root=0)
        tree, cost = brute_force_optimum(inst)
        assert tree == SolutionTree(0, {v: v - 1 for v in range(1, 11)})
        assert cost == pytest.approx(15.0)

    def test_large_dense_component_is_refused(self):
        n = 21
        specs = [(v, v + 1, 1.0, 1.0) for v in range(n - 1)] + [(v, v + 5, 2.0, 2.0) for v in range(0, 15, 3)]
        inst = Instance.from_edges(n, specs, prizes=np.ones(n), root=0)
        with pytest.raises(OracleBudgetError):
            brute_force_optimum(inst)

    def test_vertices_outside_the_root_component_do_not_count(self):
        specs = [(v, v + 1, 1.0, 1.0) for v in range(3)] + [(v, v + 1, 1.0, 1.0) for v in range(4, 30)]
        prizes = np.zeros(31)
        prizes[3] = 9.0
        prizes[20] = 4.0
        inst = Instance.from_edges(31, specs, prizes=prizes, root=0)
        tree, cost = brute_force_optimum(inst)
        assert tree == SolutionTree(0, {1: 0, 2: 1, 3: 2})
        assert cost == pytest.approx(7.0)

    @pytest.mark.parametrize("seed", [4, 5, 6])
    def test_subset_and_spanning_tree_enumerations_agree(self, monkeypatch, seed):
        inst = make_random_instance(np.random.default_rng(seed), 11, 3, terminals=4, prize_high=3.0, symmetric=False)
        _, by_subsets = brute_force_optimum(inst)
        monkeypatch.setattr(config, "ORACLE_MAX_VERTICES", 5)
        _, by_spanning_trees = brute_force_optimum(inst)
        assert by_spanning_trees == pytest.approx(by_subsets)


class TestReferenceTrees:
    def test_triangle_mst(self):
        inst = Instance.from_edges(3, [(0, 1, 1.0, 1.0), (1, 2, 2.0, 2.0), (0, 2, 3.0, 3.0)], root=0)
        tree, cost = reference_mst(inst)
        assert cost == 3.0
        assert tree.edges() == [(1, 0), (2, 1)]

    def test_mst_only_spans_the_root_component(self, branched):
        tree, cost = reference_mst(branched)
        assert cost == 5.0
        assert 6 not in tree.members

    def test_path_distances_are_prefix_sums(self, path3):
        assert reference_sssp(path3, 0) == {0: 0.0, 1: 1.0, 2: 3.0}


class TestExhaustiveBudget:
    def test_degree(self, engine):
        star = Instance.from_edges(6, [(0, k, 1.0, 1.0) for k in range(1, 6)], root=1)
        state = engine.init_state(star, 1)
        with pytest.raises(OracleBudgetError):
            exhaustive_update(star, state, 0)

    def test_depth(self, engine, path3):
        state = engine.init_state(path3, 4)
        with pytest.raises(OracleBudgetError):
            exhaustive_update(path3, state, 1)


class TestFlatMode:
    def _states(self, engine, instance, rng):
        shape = (instance.num_arcs, 5)
        messages, local = rng.normal(size=shape), rng.normal(size=shape)
        states = []
        for mode in (NORMAL, FLAT):
            state = engine.init_state(instance, 2, mode, gamma1=0.2, seed=4)
            state.messages, state.local = messages.copy(), local.copy()
            state.iteration = 2
            states.append(state)
        return states

    def test_prized_vertex_is_unaffected(self, engine, path3):
        inst = path3.with_prizes([0.0, 4.0, 10.0])
        normal, flat = self._states(engine, inst, np.random.default_rng(8))
        np.testing.assert_array_equal(exhaustive_update(inst, normal, 1), exhaustive_update(inst, flat, 1))

    def test_relay_vertex_gains_same_depth_children(self, engine, path3):
        normal, flat = self._states(engine, path3, np.random.default_rng(8))
        assert np.all(exhaustive_update(path3, flat, 1) >= exhaustive_update(path3, normal, 1))
