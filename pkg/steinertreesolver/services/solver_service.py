"""
SolverService: orchestration of one solve.
Rooting, depth selection, the gamma1 halving schedule, the running schemes,
variant dispatch and the anytime primal-bound trace.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor, Future
from typing import Optional, List, Dict, Any, Callable, Iterator, Tuple

import numpy as np

from .. import config
from ..errors import ConfigurationError, InfeasibleError
from ..models.engine_state import EngineState, NORMAL, FLAT
from ..models.instance import Instance
from ..models.solution_tree import SolutionTree
from ..models.solver_config import SolverConfig
from ..models.trace_record import TraceRecord, Extraction
from . import tree_service
from .heuristics_service import HeuristicsService, best_of
from .maxsum_engine import MaxSumEngine, StabilityMonitor
from .rooting_service import RootingService, compute_dmin

logger = logging.getLogger(__name__)


def gamma_schedule(start: float, minimum: float, halving: float = 0.5) -> Iterator[float]:
    """start, start*h, start*h^2, ... while not below minimum."""
    gamma1 = start
    while gamma1 >= minimum:
        yield gamma1
        gamma1 *= halving


def next_depth(depth: int, cap: int) -> int:
    """Depth of the next round of the increasing scheme: D + ceil(D/4), never above cap."""
    return min(depth + math.ceil(depth / 4), cap)


def leg_seed(seed: int, leg: int) -> int:
    """Noise seed of one leg, derived from the run seed."""
    return int(np.random.SeedSequence([seed, leg]).generate_state(1)[0])


class SolveResult:
    """Outcome of a run: the rooted instance, the best extraction (None if infeasible) and the trace."""

    def __init__(self, instance: Instance, best: Optional[Extraction], trace: List[TraceRecord], converged: bool):
        self.instance = instance
        self.best = best
        self.trace = trace
        self.converged = converged

    @property
    def feasible(self) -> bool:
        return self.best is not None

    @property
    def energy(self) -> float:
        return self.best.energy if self.best else math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance.to_dict(),
            "feasible": self.feasible,
            "energy": self.energy,
            "label": self.best.label if self.best else None,
            "records": len(self.trace),
            "converged": self.converged,
        }

    def __repr__(self) -> str:
        return f"SolveResult(energy={self.energy}, records={len(self.trace)}, converged={self.converged})"


class GapReport:
    """Comparison of two traces: final primal bounds, their gap and time to first feasible."""

    def __init__(
        self,
        final_x: Optional[float],
        final_y: Optional[float],
        first_x: Optional[float],
        first_y: Optional[float],
    ):
        self.final_x = final_x
        self.final_y = final_y
        self.first_x = first_x
        self.first_y = first_y
        self.gap: Optional[float] = None
        if final_x is not None and final_y is not None:
            self.gap = tree_service.gap(final_x, final_y)

    @property
    def feasible(self) -> bool:
        return self.gap is not None

    def lines(self) -> List[str]:
        def show(value: Optional[float], fmt: str) -> str:
            return "infeasible" if value is None else format(value, fmt)

        out = [
            f"PB_X {show(self.final_x, '.6f')}",
            f"PB_Y {show(self.final_y, '.6f')}",
            f"FIRST_FEASIBLE_X {show(self.first_x, '.3f')}",
            f"FIRST_FEASIBLE_Y {show(self.first_y, '.3f')}",
        ]
        if self.gap is not None:
            out.append(f"GAP {self.gap:.2f}")
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "final_x": self.final_x,
            "final_y": self.final_y,
            "first_feasible_x": self.first_x,
            "first_feasible_y": self.first_y,
            "gap": self.gap,
        }


def _summary(trace: List[TraceRecord]) -> Tuple[Optional[float], Optional[float]]:
    feasible = [r for r in trace if r.feasible]
    if not feasible:
        return None, None
    return min(r.energy for r in feasible), min(r.wall_time for r in feasible)


def compare(trace_x: List[TraceRecord], trace_y: List[TraceRecord]) -> GapReport:
    """
    Compare two traces of the same instance.
    Returns a GapReport whose gap is 100 * (X - Y) / Y over the final primal bounds.
    """
    final_x, first_x = _summary(trace_x)
    final_y, first_y = _summary(trace_y)
    return GapReport(final_x, final_y, first_x, first_y)


class SolverService:
    """
    Runs reinforced Max-Sum with per-iteration extraction.
    Collaborators are injected the same way every service here takes its repositories.
    """

    def __init__(
        self,
        engine: Optional[MaxSumEngine] = None,
        heuristics: Optional[HeuristicsService] = None,
        rooting: Optional[RootingService] = None,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.engine = engine or MaxSumEngine()
        self.heuristics = heuristics or HeuristicsService(self.engine)
        self.rooting = rooting or RootingService(self.engine)
        self.clock = clock

    def run(self, instance: Instance, solver_config: Optional[SolverConfig] = None) -> SolveResult:
        cfg = (solver_config or SolverConfig()).ensure_valid()
        if cfg.heuristic == "W" and instance.kind == "SPG":
            raise ConfigurationError("variant W needs a prize-collecting instance")

        self._start = self.clock()
        self._deadline = self._start + cfg.time_limit
        self._trace: List[TraceRecord] = []
        self._extractions: List[Extraction] = []

        budget = min(config.ROOTING_BUDGET_FRACTION * cfg.time_limit, config.ROOTING_BUDGET_CAP)
        rooted = self.rooting.resolve(instance, mu=cfg.mu, budget=budget, seed=cfg.seed)
        root = rooted.root
        mode = FLAT if cfg.flat else NORMAL
        cap = max(rooted.num_vertices - 1, 1)
        depth = cfg.depth_override or min(compute_dmin(rooted, root, mode), cap)

        self._record(rooted, "root", SolutionTree.single(root), 0, depth, 0.0, at_zero=True)

        converged = False
        if cfg.plain_iterations > 0:
            # unreinforced Max-Sum first; exact on spanning-tree instances when it settles
            plain_energy, converged = self._run_leg(rooted, cfg, mode, depth, 0.0, 0)
            logger.info("plain leg D=%d energy=%s converged=%s", depth, plain_energy, converged)
        leg = 1
        while True:
            previous = math.inf
            for gamma1 in gamma_schedule(cfg.gamma1_start, cfg.gamma1_min, cfg.halving):
                if self._time_left() <= 0:
                    break
                leg_energy, leg_converged = self._run_leg(rooted, cfg, mode, depth, gamma1, leg)
                converged = converged or leg_converged
                leg += 1
                logger.info("leg D=%d gamma1=%g energy=%s converged=%s", depth, gamma1, leg_energy, leg_converged)
                if math.isfinite(previous) and previous - leg_energy < cfg.leg_tolerance * abs(previous):
                    break
                previous = min(previous, leg_energy)
            if cfg.scheme == "bounded" or self._time_left() <= 0 or depth >= cap:
                break
            depth = next_depth(depth, cap)

        try:
            best = best_of(self._extractions)
        except InfeasibleError:
            logger.warning("no feasible tree found for %r", rooted)
            best = None
        return SolveResult(rooted, best, self._trace, converged)

    # ------------------------------------------------------------------
    # Internals
    # ------------------------------------------------------------------
    def _time_left(self) -> float:
        return self._deadline - self.clock()

    def _record(self, instance: Instance, label: str, tree: SolutionTree, iteration: int, depth: int,
                gamma1: float, at_zero: bool = False) -> Extraction:
        value = tree_service.energy(instance, tree)
        feasible = tree_service.is_feasible(instance, tree)
        extraction = Extraction(label, tree, value, feasible, iteration)
        self._extractions.append(extraction)
        wall = 0.0 if at_zero else self.clock() - self._start
        self._trace.append(TraceRecord(wall, iteration, label, value, feasible, depth, gamma1))
        logger.debug("t=%d %s energy=%.6f feasible=%s", iteration, label, value, feasible)
        return extraction

    def _extract(self, cfg: SolverConfig, snapshot: EngineState) -> SolutionTree:
        return self.heuristics.extract(cfg.heuristic, snapshot)

    def _decisional(self, state: EngineState):
        rep = self.engine.decisional_variables(state)
        if tree_service.validate_representation(state.instance, rep, state.mode):
            tree, _ = tree_service.representation_to_subgraph(state.instance, rep, state.mode)
            return rep, tree
        return rep, None

    def _run_leg(self, instance: Instance, cfg: SolverConfig, mode: str, depth: int, gamma1: float,
                 leg: int) -> Tuple[float, bool]:
        state = self.engine.init_state(instance, depth, mode, gamma1, leg_seed(cfg.seed, leg), cfg.schedule)
        monitor = StabilityMonitor(cfg.window)
        limit = math.ceil(cfg.max_gamma_t / gamma1) if gamma1 > 0 else cfg.plain_iterations
        best = math.inf
        converged = False
        pool = ThreadPoolExecutor(max_workers=1) if cfg.overlap_extraction else None
        pending: Optional[Tuple[Future, int]] = None
        try:
            while state.iteration < limit and self._time_left() > 0:
                self.engine.step(state)
                if pool is not None:
                    if pending is not None:
                        best = min(best, self._collect(instance, cfg, pending, depth, gamma1))
                    pending = (pool.submit(self._extract, cfg, state.snapshot()), state.iteration)
                else:
                    tree = self._extract(cfg, state)
                    best = min(best, self._score(instance, cfg, tree, state.iteration, depth, gamma1))

                rep, ms_tree = self._decisional(state)
                if ms_tree is not None:
                    best = min(best, self._score(instance, cfg, ms_tree, state.iteration, depth, gamma1, "MS"))
                if monitor.observe(rep):
                    converged = True
                    break
            if pending is not None:
                best = min(best, self._collect(instance, cfg, pending, depth, gamma1))
        finally:
            if pool is not None:
                pool.shutdown(wait=True)
        return best, converged

    def _collect(self, instance: Instance, cfg: SolverConfig, pending: Tuple[Future, int], depth: int,
                 gamma1: float) -> float:
        future, iteration = pending
        return self._score(instance, cfg, future.result(), iteration, depth, gamma1)

    def _score(self, instance: Instance, cfg: SolverConfig, tree: SolutionTree, iteration: int, depth: int,
               gamma1: float, label: Optional[str] = None) -> float:
        extraction = self._record(instance, label or cfg.label, tree, iteration, depth, gamma1)
        return extraction.energy if extraction.feasible else math.inf
