"""
EngineState entity: cavity fields, local fields and reinforcement bookkeeping
of one Max-Sum run.
"""
import copy
from typing import Optional, Dict, Any

import numpy as np

from .fields import MessageField, LocalField, sat_add, sat_scale
from .instance import Instance

NORMAL = "normal"
FLAT = "flat"
VALID_MODES = [NORMAL, FLAT]


class EngineState:
    """
    messages[e] is h_ij for oriented slot e = (i, j), indexed by d_ij.
    local[e] is H_ij, indexed by d_ij.
    weights holds w_ij + r_ij (the noised weights the engine optimizes).
    """

    def __init__(
        self,
        instance: Instance,
        depth: int,
        mode: str,
        gamma1: float,
        seed: Optional[int],
        messages: MessageField,
        local: LocalField,
        weights: np.ndarray,
        noise: np.ndarray,
        schedule: str = "sequential",
        iteration: int = 0,
    ):
        self.instance = instance
        self.depth = int(depth)
        self.mode = mode
        self.gamma1 = float(gamma1)
        self.seed = seed
        self.messages = messages
        self.local = local
        self.weights = weights
        self.noise = noise
        self.schedule = schedule
        self.iteration = int(iteration)
        # Table entries written by sweeps so far
        self.updates = 0

    @property
    def gamma_t(self) -> float:
        """Reinforcement weight at the current iteration, gamma1 * t."""
        return self.gamma1 * self.iteration

    @property
    def width(self) -> int:
        """Columns per table row: depths -D..D."""
        return 2 * self.depth + 1

    def validate(self) -> Dict[str, str]:
        """
        Validate the run parameters.
        Returns a dictionary of field names to error messages.
        """
        errors = {}
        if self.depth < 1:
            errors["depth"] = "D must be at least 1"
        if self.mode not in VALID_MODES:
            errors["mode"] = f"Mode must be one of {VALID_MODES}"
        if self.gamma1 < 0:
            errors["gamma1"] = "Reinforcement slope must be non-negative"
        if self.iteration < 0:
            errors["iteration"] = "Iteration counter must be non-negative"
        if self.instance.root is None:
            errors["root"] = "Engine needs a rooted instance"
        return errors

    def incoming(self, vertex: int, messages: Optional[MessageField] = None) -> np.ndarray:
        """
        Rows X[k] = h_ki + gamma_t * H_ki for every neighbor k of vertex, indexed by d_ki,
        in the order of instance.incident_edges(vertex).
        """
        source = self.messages if messages is None else messages
        inbound = self.instance.incident_edges(vertex) ^ 1
        rows = source[inbound]
        if self.gamma_t == 0.0:
            return rows.copy()
        return sat_add(rows, sat_scale(self.local[inbound], self.gamma_t))

    def snapshot(self) -> "EngineState":
        """Read-only copy handed to extraction while the engine keeps sweeping."""
        snap = copy.copy(self)
        snap.messages = self.messages.copy()
        snap.local = self.local.copy()
        for arr in (snap.messages, snap.local):
            arr.setflags(write=False)
        return snap

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "mode": self.mode,
            "gamma1": self.gamma1,
            "iteration": self.iteration,
            "seed": self.seed,
            "schedule": self.schedule,
        }

    def __repr__(self) -> str:
        return f"EngineState(D={self.depth}, mode={self.mode}, t={self.iteration}, gamma1={self.gamma1})"
