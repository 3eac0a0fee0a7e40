"""
Rooting, depth selection and the solver driver.
"""
import itertools
import math

import numpy as np
import pytest

from steinertreesolver.errors import ConfigurationError, InfeasibleError, InstanceError
from steinertreesolver.models import FLAT, NORMAL, Instance, ReweightedView, SolutionTree, SolverConfig, TraceRecord
from steinertreesolver.services.generator_service import GeneratorService
from steinertreesolver.services.heuristics_service import extract_mst
from steinertreesolver.services.oracle_service import brute_force_optimum, reference_mst
from steinertreesolver.services.rooting_service import (
    RootingService,
    build_augmented_instance,
    compute_dmin,
    default_mu,
    root_spg,
)
from steinertreesolver.services.solver_service import (
    SolverService,
    compare,
    gamma_schedule,
    leg_seed,
    next_depth,
)
from steinertreesolver.services.tree_service import energy

from .conftest import make_random_instance


def quick_config(**overrides):
    params = dict(time_limit=5.0, window=3, gamma1_start=0.05, gamma1_min=0.0125, seed=1)
    params.update(overrides)
    return SolverConfig(**params)


@pytest.fixture
def solver(engine):
    return SolverService(engine)


@pytest.fixture
def unrooted_path_spg():
    return Instance.from_edges(3, [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0)], kind="SPG", terminals=[0, 1, 2])


@pytest.fixture
def unrooted_pcspg():
    specs = [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0), (2, 3, 1.0, 1.0), (1, 3, 2.5, 2.5)]
    return Instance.from_edges(4, specs, prizes=[0.0, 5.0, 0.0, 2.0], kind="PCSPG")


class TestSchedules:
    def test_gamma_halving(self):
        values = list(gamma_schedule(1e-2, 1e-5))
        assert len(values) == 10
        assert values[0] == 1e-2
        assert values[1] == pytest.approx(5e-3)
        assert values[-1] >= 1e-5

    def test_depth_growth(self):
        assert next_depth(1, 100) == 2
        assert next_depth(4, 100) == 5
        assert next_depth(5, 100) == 7
        assert next_depth(10, 11) == 11

    def test_leg_seeds(self):
        assert leg_seed(3, 0) == leg_seed(3, 0)
        assert leg_seed(3, 0) != leg_seed(3, 1)


class TestRooting:
    def test_spg_root_is_the_most_central_terminal(self, unrooted_path_spg):
        assert root_spg(unrooted_path_spg) == 1

    def test_single_terminal_and_star_center(self):
        single = Instance.from_edges(2, [(0, 1, 1.0, 1.0)], kind="SPG", terminals=[1])
        assert root_spg(single) == 1
        star = Instance.from_edges(4, [(0, k, 1.0, 1.0) for k in range(1, 4)], kind="SPG", terminals=[0, 1, 2, 3])
        assert root_spg(star) == 0

    def test_spg_without_terminals(self):
        inst = Instance.from_edges(2, [(0, 1, 1.0, 1.0)], kind="SPG")
        with pytest.raises(InstanceError):
            root_spg(inst)

    def test_augmented_instance(self, unrooted_pcspg):
        mu = default_mu(unrooted_pcspg)
        assert mu == pytest.approx(2.0 * (2 * 5.5 + 7.0))
        augmented = build_augmented_instance(unrooted_pcspg, mu)
        assert augmented.num_vertices == 5
        assert augmented.root == 4
        assert augmented.kind == "RSTP"
        assert augmented.num_edges == unrooted_pcspg.num_edges + 2
        assert augmented.weight(1, 4) == mu
        assert augmented.weight(3, 4) == mu
        assert not augmented.has_edge(0, 4)
        assert augmented.external_id(4) == 5

    def test_augmented_optimum_is_the_virtual_root_alone(self, unrooted_pcspg):
        augmented = build_augmented_instance(unrooted_pcspg, default_mu(unrooted_pcspg))
        tree, cost = brute_force_optimum(augmented)
        assert tree == SolutionTree.single(4)
        assert cost == pytest.approx(7.0)

    def test_pcspg_root_is_profitable(self, engine, unrooted_pcspg):
        root = RootingService(engine).root_pcspg(unrooted_pcspg, budget=2.0, window=3, seed=0)
        assert root in (1, 3)

    def test_single_profitable_vertex(self, engine):
        inst = Instance.from_edges(3, [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0)], prizes=[0, 0, 4.0], kind="PCSPG")
        assert RootingService(engine).resolve(inst).root == 2

    def test_resolve_passes_rooted_instances_through(self, engine, path3):
        assert RootingService(engine).resolve(path3) is path3

    def test_resolve_spg(self, engine, unrooted_path_spg):
        assert RootingService(engine).resolve(unrooted_path_spg).root == 1


class TestDmin:
    def test_star(self):
        star = Instance.from_edges(4, [(0, k, 1.0, 1.0) for k in range(1, 4)], prizes=[0, 1, 1, 1], root=0)
        assert compute_dmin(star, 0) == 1

    def test_path(self, path3):
        assert compute_dmin(path3, 0) == 2

    def test_flat_counts_profitable_vertices(self, branched):
        assert compute_dmin(branched, 2, FLAT) == 3
        assert compute_dmin(branched, 2, NORMAL) == 4

    def test_no_profitable_vertex(self):
        inst = Instance.from_edges(2, [(0, 1, 1.0, 1.0)], root=0)
        assert compute_dmin(inst, 0) == 1

    def test_unreachable_terminal(self):
        inst = Instance.from_edges(4, [(0, 1, 1.0, 1.0), (2, 3, 1.0, 1.0)], root=0, kind="SPG", terminals=[0, 1, 3])
        with pytest.raises(InfeasibleError):
            compute_dmin(inst, 0)


class TestSolverRun:
    def test_path(self, solver, path3):
        result = solver.run(path3, quick_config())
        assert result.feasible
        assert result.energy == pytest.approx(3.0)
        first = result.trace[0]
        assert (first.label, first.iteration, first.wall_time) == ("root", 0, 0.0)
        assert first.energy == 10.0
        assert result.to_dict()["label"] in ("O", "MS")

    def test_spg_triangle(self, solver, triangle_spg):
        result = solver.run(triangle_spg, quick_config())
        assert result.energy == pytest.approx(2.0)
        assert not result.trace[0].feasible

    def test_unrooted_spg_is_rooted_first(self, solver, unrooted_path_spg):
        result = solver.run(unrooted_path_spg, quick_config())
        assert result.instance.root == 1
        assert result.energy == pytest.approx(2.0)

    @pytest.mark.parametrize("variant", ["O", "N", "J", "W", "F", "N,F", "J,F"])
    def test_variants_never_beat_the_optimum(self, solver, variant):
        inst = make_random_instance(np.random.default_rng(11), 8, 4, terminals=4, prize_high=3.0)
        _, optimum = brute_force_optimum(inst)
        cfg = quick_config(variant=variant)
        result = solver.run(inst, cfg)
        assert result.feasible
        assert result.energy >= optimum - 1e-9
        assert result.energy == pytest.approx(energy(inst, result.best.tree))
        assert {r.label for r in result.trace} <= {"root", cfg.label, "MS"}
        assert result.energy == min(r.energy for r in result.trace if r.feasible)

    def test_cheap_prizes_leave_the_root_alone(self, solver, path3):
        inst = path3.with_prizes([0.0, 0.25, 0.5])
        result = solver.run(inst, quick_config())
        assert result.best.tree == SolutionTree.single(0)
        assert result.energy == pytest.approx(0.75)

    def test_spanning_tree_instance_reaches_the_mst(self, solver):
        specs = [(0, 1, 0.3, 0.3), (1, 2, 0.5, 0.5), (0, 2, 0.9, 0.9), (2, 3, 0.2, 0.2), (1, 3, 0.7, 0.7)]
        inst = Instance.from_edges(4, specs, prizes=[0.0, 50.0, 50.0, 50.0], root=0)
        _, mst_cost = reference_mst(inst)
        result = solver.run(inst, quick_config(variant="N", scheme="bounded", depth_override=3, window=10))
        assert result.energy == pytest.approx(mst_cost)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_spanning_tree_instances_reach_the_kruskal_mst(self, solver, seed):
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(10, 41))
        inst = make_random_instance(rng, n, n)
        prizes = np.full(n, 100.0)
        prizes[inst.root] = 0.0
        inst = inst.with_prizes(prizes)
        _, mst_cost = reference_mst(inst)
        cfg = quick_config(variant="N", scheme="bounded", depth_override=n - 1, time_limit=3.0, plain_iterations=20)
        result = solver.run(inst, cfg)
        assert result.energy == pytest.approx(mst_cost, abs=1e-6)

    def test_plain_leg_comes_first(self, solver, path3):
        result = solver.run(path3, quick_config())
        assert result.trace[1].gamma1 == 0.0
        assert result.converged
        assert any(r.gamma1 > 0 for r in result.trace)
        assert result.energy == pytest.approx(3.0)

    def test_plain_leg_can_be_switched_off(self, solver, path3):
        result = solver.run(path3, quick_config(plain_iterations=0))
        assert all(r.gamma1 > 0 for r in result.trace[1:])

    @pytest.mark.parametrize("kind", ["SPG", "RSTP"])
    def test_small_instances_are_solved_to_optimality(self, solver, kind):
        hits = 0
        seeds = range(600, 610)
        for seed in seeds:
            inst = make_random_instance(np.random.default_rng(seed), 8, 4, kind=kind, terminals=4, prize_high=3.0)
            _, optimum = brute_force_optimum(inst)
            best = min(
                solver.run(inst, quick_config(variant=variant, time_limit=2.0, window=10, gamma1_start=0.01,
                                              gamma1_min=0.0025)).energy
                for variant in ("O", "N")
            )
            assert best >= optimum - 1e-9
            assert best <= 1.05 * optimum + 1e-9
            hits += best == pytest.approx(optimum)
        assert hits >= 0.9 * len(seeds)

    @pytest.mark.parametrize("seed", range(6))
    def test_flat_model_with_one_level_per_terminal_matches_normal(self, solver, seed):
        rng = np.random.default_rng(700 + seed)
        n = 13
        weights = 1.0 - rng.random(n - 1)
        specs = [(v, v + 1, float(w), float(w)) for v, w in enumerate(weights)] + [(3, 5, 5.0, 5.0), (8, 10, 5.0, 5.0)]
        prizes = np.zeros(n)
        prizes[[4, 8, 12]] = 10.0
        inst = Instance.from_edges(n, specs, prizes=prizes, root=0)
        assert compute_dmin(inst, 0, NORMAL) >= 3 * compute_dmin(inst, 0, FLAT)
        flat = solver.run(inst, quick_config(variant="F", scheme="bounded", depth_override=3, time_limit=2.0))
        normal = solver.run(inst, quick_config(variant="O", scheme="bounded", time_limit=2.0))
        assert flat.energy <= normal.energy + 1e-9
        assert flat.energy == pytest.approx(float(weights.sum()))

    def test_guided_mst_beats_the_raw_mst_on_grids(self, solver):
        generator = GeneratorService()
        wins = 0
        for seed in range(10):
            inst = generator.grid(6, 6, terminals=5, seed=seed)
            result = solver.run(inst, quick_config(time_limit=2.0))
            rooted = result.instance
            raw = extract_mst(rooted, ReweightedView(rooted.weights, rooted.penalty_constant()))
            wins += result.energy <= energy(rooted, raw) + 1e-9
        assert wins >= 9

    def test_increasing_scheme_never_lowers_depth(self, solver, branched):
        result = solver.run(branched, quick_config(variant="N"))
        depths = [r.depth for r in result.trace]
        assert depths == sorted(depths)
        assert depths[0] == 4
        assert depths[-1] <= branched.num_vertices - 1

    def test_trace_times_do_not_go_back(self, solver, branched):
        result = solver.run(branched, quick_config(variant="F"))
        times = [r.wall_time for r in result.trace]
        assert times == sorted(times)
        assert all(r.validate() == {} for r in result.trace)

    def test_bounded_scheme_keeps_one_depth(self, solver, branched):
        result = solver.run(branched, quick_config(scheme="bounded"))
        assert {r.depth for r in result.trace} == {4}

    def test_depth_override(self, solver, branched):
        result = solver.run(branched, quick_config(scheme="bounded", depth_override=6))
        assert {r.depth for r in result.trace} == {6}

    def test_overlapped_extraction(self, solver, path3):
        result = solver.run(path3, quick_config(overlap_extraction=True))
        assert result.energy == pytest.approx(3.0)

    def test_synchronous_schedule(self, solver, path3):
        result = solver.run(path3, quick_config(schedule="synchronous"))
        assert result.energy == pytest.approx(3.0)

    def test_time_limit_is_honoured(self, engine, path3):
        ticks = itertools.count()
        service = SolverService(engine, clock=lambda: float(next(ticks)))
        result = service.run(path3, quick_config(time_limit=3.0))
        assert result.trace[0].label == "root"
        assert max(r.wall_time for r in result.trace) <= 4.0

    def test_gw_needs_prizes(self, solver, triangle_spg):
        with pytest.raises(ConfigurationError):
            solver.run(triangle_spg, quick_config(variant="W"))

    def test_disconnected_terminal(self, solver):
        inst = Instance.from_edges(4, [(0, 1, 1.0, 1.0), (2, 3, 1.0, 1.0)], kind="SPG", terminals=[0, 1, 3])
        with pytest.raises(InfeasibleError):
            solver.run(inst, quick_config())


class TestCompare:
    def _trace(self, *rows):
        return [TraceRecord(t, i, "O", e, f, 2, 0.01) for i, (t, e, f) in enumerate(rows)]

    def test_gap_report(self):
        x = self._trace((0.0, 50.0, False), (0.5, 12.0, True), (1.0, 11.0, True))
        y = self._trace((0.0, 50.0, False), (2.0, 10.0, True))
        report = compare(x, y)
        assert report.gap == pytest.approx(10.0)
        assert report.first_x == 0.5
        assert report.lines() == [
            "PB_X 11.000000",
            "PB_Y 10.000000",
            "FIRST_FEASIBLE_X 0.500",
            "FIRST_FEASIBLE_Y 2.000",
            "GAP 10.00",
        ]

    def test_sign_convention(self):
        report = compare(self._trace((0.0, 95.0, True)), self._trace((0.0, 100.0, True)))
        assert report.gap == pytest.approx(-5.0)
        same = self._trace((0.0, 40.0, True))
        assert compare(same, same).gap == 0.0

    def test_infeasible_side(self):
        x = self._trace((0.0, 1.0, True))
        y = self._trace((0.0, math.inf, False))
        report = compare(x, y)
        assert not report.feasible
        assert "PB_Y infeasible" in report.lines()
        assert report.to_dict()["gap"] is None
