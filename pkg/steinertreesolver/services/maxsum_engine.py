"""
MaxSumEngine: reinforced Max-Sum iteration over depth-labelled edges.
Cavity fields h_ij(d), local fields H_ij(d), decisional variables and node fields,
for the normal model and the flat model (constant-depth relays through prize-0 vertices).
"""
import logging
from typing import Optional

import numpy as np

from .. import config
from ..errors import ConfigurationError
from ..models.engine_state import EngineState, NORMAL, FLAT
from ..models.fields import NEG_INF, normalize_rows, sat_add, sat_scale
from ..models.instance import Instance
from ..models.representation import Representation
from .leave_one_out import loo_sum, loo_one, loo_two, full_one, full_two

logger = logging.getLogger(__name__)


def tie_order(bound: int) -> np.ndarray:
    """Columns in argmax preference: d = 0, -1, 1, -2, 2, ..."""
    order = [bound]
    for e in range(1, bound + 1):
        order.extend((bound - e, bound + e))
    return np.asarray(order, dtype=np.int64)


class MaxSumEngine:
    """
    Stateless update rules over an EngineState.
    schedule "sequential" updates vertices in id order, in place;
    "synchronous" computes every vertex from the previous sweep's messages.
    """

    def __init__(self, noise_scale: float = config.NOISE_SCALE):
        self.noise_scale = noise_scale

    # ------------------------------------------------------------------
    # State
    # ------------------------------------------------------------------
    def init_state(
        self,
        instance: Instance,
        depth: int,
        mode: str = NORMAL,
        gamma1: float = 0.0,
        seed: Optional[int] = 0,
        schedule: str = "sequential",
    ) -> EngineState:
        width = 2 * int(depth) + 1
        rng = np.random.default_rng(seed)
        # one r_ij per undirected edge, shared by both orientations
        noise = np.repeat(rng.uniform(0.0, self.noise_scale * instance.max_weight(), size=instance.num_edges), 2)
        state = EngineState(
            instance=instance,
            depth=depth,
            mode=mode,
            gamma1=gamma1,
            seed=seed,
            messages=normalize_rows(np.zeros((instance.num_arcs, width))),
            local=np.zeros((instance.num_arcs, width)),
            weights=instance.weights + noise,
            noise=noise,
            schedule=schedule,
        )
        errors = state.validate()
        if schedule not in config.VALID_SCHEDULES:
            errors["schedule"] = f"Schedule must be one of {config.VALID_SCHEDULES}"
        if errors:
            raise ConfigurationError.from_errors(errors)
        logger.debug("initialized %r on %r", state, instance)
        return state

    # ------------------------------------------------------------------
    # Sweeps
    # ------------------------------------------------------------------
    def vertex_update(self, state: EngineState, vertex: int, messages: Optional[np.ndarray] = None) -> np.ndarray:
        """
        New (unnormalized) h_ij rows for every slot (vertex, j), in incident order.
        Reads incoming fields from `messages` (defaults to the live table).
        """
        inst = state.instance
        D = state.depth
        width = state.width
        slots = inst.incident_edges(vertex)
        deg = len(slots)
        out = np.full((deg, width), NEG_INF)
        if deg == 0:
            return out

        X = state.incoming(vertex, messages)
        z = X[:, D]

        if vertex == inst.root:
            # children sit at depth 1 or stay out
            allowed = loo_sum(np.maximum(X[:, D + 1], z))
            out[:, D - 1] = allowed
            out[:, D] = allowed
            return out

        w = state.weights[slots]
        # B[:, e-1]: a non-parent neighbor of a vertex at depth e is its child at e+1 or idle
        B = np.empty((deg, D))
        if D > 1:
            B[:, :D - 1] = np.maximum(X[:, D + 2:], z[:, None])
        B[:, D - 1] = z
        # A[:, e-1]: neighbor k as parent of a vertex at depth e
        A = sat_add(X[:, D - 1::-1], -w[:, None])

        rest = loo_sum(B)
        out[:, D + 1:] = sat_add(rest, -w[:, None])
        G = loo_one(A, B)
        if D > 1:
            # d = -(e+1): j is a child at depth e+1
            out[:, :D - 1] = G[:, D - 2::-1]
        out[:, D] = np.maximum(sat_add(loo_sum(z), -inst.prizes[vertex]), G.max(axis=1))

        if state.mode == FLAT and inst.prizes[vertex] == 0:
            self._flat_terms(out, X, A, z, w, D)
        return out

    @staticmethod
    def _flat_terms(out: np.ndarray, X: np.ndarray, A: np.ndarray, z: np.ndarray, w: np.ndarray, D: int) -> None:
        """Max in the relay states: one parent and one child at the same depth."""
        same = X[:, D + 1:]
        Z = np.repeat(z[:, None], D, axis=1)
        child = loo_one(same, Z)
        out[:, D + 1:] = np.maximum(out[:, D + 1:], sat_add(child, -w[:, None]))
        parent = loo_one(A, Z)
        out[:, D - 1::-1] = np.maximum(out[:, D - 1::-1], parent)
        relay = loo_two(same, A, Z).max(axis=1)
        out[:, D] = np.maximum(out[:, D], relay)

    def sweep(self, state: EngineState) -> EngineState:
        """One pass of h over every vertex; each written row is normalized to max 0."""
        inst = state.instance
        if state.schedule == "synchronous":
            source = state.messages.copy()
            fresh = state.messages.copy()
            for v in range(inst.num_vertices):
                slots = inst.incident_edges(v)
                if len(slots):
                    fresh[slots] = normalize_rows(self.vertex_update(state, v, source))
                    state.updates += len(slots) * state.width
            state.messages = fresh
        else:
            for v in range(inst.num_vertices):
                slots = inst.incident_edges(v)
                if len(slots):
                    state.messages[slots] = normalize_rows(self.vertex_update(state, v))
                    state.updates += len(slots) * state.width
        return state

    def ms_sweep_normal(self, state: EngineState) -> EngineState:
        if state.mode != NORMAL:
            raise ConfigurationError("ms_sweep_normal needs a normal-mode state")
        return self.sweep(state)

    def ms_sweep_flat(self, state: EngineState) -> EngineState:
        if state.mode != FLAT:
            raise ConfigurationError("ms_sweep_flat needs a flat-mode state")
        return self.sweep(state)

    def reinforce(self, state: EngineState) -> EngineState:
        """H <- h_ij(d) + h_ji(-d) + gamma_t H, normalized; then t += 1."""
        h = state.messages
        combined = sat_add(h, h[np.arange(len(h)) ^ 1, ::-1])
        if state.gamma_t > 0:
            combined = sat_add(combined, sat_scale(state.local, state.gamma_t))
        state.local = normalize_rows(combined)
        state.iteration += 1
        return state

    def step(self, state: EngineState) -> EngineState:
        return self.reinforce(self.sweep(state))

    # ------------------------------------------------------------------
    # Readouts
    # ------------------------------------------------------------------
    def decisional_variables(self, state: EngineState) -> Representation:
        """argmax_d H_ij per canonical slot, mirrored onto the reverse slot."""
        D = state.depth
        order = tie_order(D)
        canonical = state.local[0::2][:, order]
        picked = order[np.argmax(canonical, axis=1)] - D
        return Representation.from_canonical(picked, D)

    def node_fields(self, state: EngineState) -> np.ndarray:
        """
        h_i(d) for d = 0..D, one row per vertex, normalized to max 0.
        The root is always in: its h_r(0) is forbidden.
        """
        inst = state.instance
        D = state.depth
        table = np.full((inst.num_vertices, D + 1), NEG_INF)
        for v in range(inst.num_vertices):
            slots = inst.incident_edges(v)
            if len(slots) == 0:
                table[v, 0] = -inst.prizes[v] if v != inst.root else NEG_INF
                if v == inst.root:
                    table[v, 1] = 0.0
                continue
            X = state.incoming(v)
            z = X[:, D]
            if v == inst.root:
                table[v, 1] = np.sum(np.maximum(X[:, D + 1], z))
                continue
            w = state.weights[slots]
            B = np.empty((len(slots), D))
            if D > 1:
                B[:, :D - 1] = np.maximum(X[:, D + 2:], z[:, None])
            B[:, D - 1] = z
            A = sat_add(X[:, D - 1::-1], -w[:, None])
            table[v, 0] = sat_add(np.sum(z), -inst.prizes[v])
            table[v, 1:] = full_one(A, B)
            if state.mode == FLAT and inst.prizes[v] == 0:
                Z = np.repeat(z[:, None], D, axis=1)
                table[v, 1:] = np.maximum(table[v, 1:], full_two(X[:, D + 1:], A, Z))
        return normalize_rows(table)


class StabilityMonitor:
    """Reports convergence once d* has been identical for `window` consecutive iterations."""

    def __init__(self, window: int = config.STABILITY_WINDOW):
        if window < 1:
            raise ConfigurationError("stability window must be at least 1")
        self.window = window
        self.last: Optional[Representation] = None
        self.streak = 0

    def observe(self, rep: Representation) -> bool:
        if self.last is not None and rep == self.last:
            self.streak += 1
        else:
            self.streak = 1
        self.last = rep
        return self.streak >= self.window

    def reset(self) -> None:
        self.last = None
        self.streak = 0
