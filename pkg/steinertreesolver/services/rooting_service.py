"""
RootingService: root selection for unrooted SPG / PCSPG instances and the
minimum depth bound D_min.
"""
import logging
import math
import time
from collections import deque
from typing import Optional, List

import numpy as np

from .. import config
from ..errors import InstanceError, InfeasibleError
from ..models.engine_state import NORMAL, FLAT
from ..models.instance import Instance
from .maxsum_engine import MaxSumEngine, StabilityMonitor

logger = logging.getLogger(__name__)


def hop_distances(instance: Instance, source: int) -> np.ndarray:
    """BFS hop counts from source; -1 for unreachable vertices."""
    dist = np.full(instance.num_vertices, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in instance.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(int(v))
    return dist


def root_spg(instance: Instance) -> int:
    """Terminal with the smallest hop eccentricity over the other terminals; lowest id on ties."""
    terminals = instance.terminals()
    if not terminals:
        raise InstanceError("SPG instance has no terminals to root at")
    best, best_ecc = terminals[0], math.inf
    for t in terminals:
        dist = hop_distances(instance, t)[terminals]
        ecc = math.inf if np.any(dist < 0) else int(dist.max())
        if ecc < best_ecc:
            best, best_ecc = t, ecc
    logger.info("SPG root %d (eccentricity %s)", best, best_ecc)
    return best


def default_mu(instance: Instance) -> float:
    return 2.0 * (instance.total_weight() + float(instance.prizes.sum()))


def build_augmented_instance(instance: Instance, mu: float) -> Instance:
    """
    Copy of the instance plus a virtual root (the last vertex) joined by
    weight-mu edges to every profitable vertex.
    """
    profitable = [int(v) for v in np.flatnonzero(instance.prizes > 0)]
    if not profitable:
        raise InstanceError("instance has no profitable vertex")
    n = instance.num_vertices
    virtual = n
    specs = [
        (int(instance.tails[e]), int(instance.heads[e]), float(instance.weights[e]), float(instance.weights[e + 1]))
        for e in range(0, instance.num_arcs, 2)
    ]
    specs.extend((virtual, j, mu, mu) for j in profitable)
    prizes = np.append(instance.prizes, 0.0)
    mask = np.append(instance.terminal_mask, False)
    external = instance.external_ids + [max(instance.external_ids) + 1]
    augmented = Instance.from_edges(
        n + 1,
        specs,
        prizes=prizes,
        root=virtual,
        kind="RSTP",
        external_ids=external,
        name=f"{instance.name}+root",
    )
    return augmented.with_terminal_mask(mask)


def compute_dmin(instance: Instance, root: int, mode: str = NORMAL) -> int:
    """
    Normal: deepest BFS hop from root to a profitable vertex. Flat: |K|.
    Always at least 1.
    """
    dist = hop_distances(instance, root)
    unreachable = [t for t in instance.terminals() if t != root and dist[t] < 0]
    if unreachable:
        raise InfeasibleError(
            f"terminals {[instance.external_id(t) for t in unreachable]} are not reachable from the root"
        )
    profitable = [v for v in np.flatnonzero(instance.prizes > 0) if v != root]
    if mode == FLAT:
        return max(len(profitable), 1)
    reach = [int(dist[v]) for v in profitable if dist[v] >= 0]
    return max(max(reach, default=1), 1)


class RootingService:
    """Picks the root the engine runs from."""

    def __init__(self, engine: Optional[MaxSumEngine] = None):
        self.engine = engine or MaxSumEngine()

    def root_pcspg(
        self,
        instance: Instance,
        mu: Optional[float] = None,
        budget: float = config.ROOTING_BUDGET_CAP,
        gamma1: float = config.GAMMA1_START,
        window: int = config.STABILITY_WINDOW,
        seed: int = 0,
    ) -> int:
        """
        Short Max-Sum pass on the augmented instance; returns the profitable j
        maximizing H_{j r}(1), lowest id on ties.
        """
        mu = default_mu(instance) if mu is None else float(mu)
        augmented = build_augmented_instance(instance, mu)
        virtual = augmented.root
        profitable: List[int] = [int(v) for v in np.flatnonzero(instance.prizes > 0)]
        if len(profitable) == 1:
            return profitable[0]

        # one hop to the virtual root, then the reach of a tree grown from a profitable vertex
        depth = 1 + compute_dmin(instance.with_root(profitable[0]), profitable[0], NORMAL)
        state = self.engine.init_state(augmented, depth, NORMAL, gamma1, seed)
        monitor = StabilityMonitor(window)
        deadline = time.monotonic() + budget
        cap = math.ceil(config.MAX_GAMMA_T / gamma1)
        while state.iteration < cap and time.monotonic() < deadline:
            self.engine.step(state)
            if monitor.observe(self.engine.decisional_variables(state)):
                break

        scores = np.array([state.local[augmented.edge_id(j, virtual), depth + 1] for j in profitable])
        chosen = profitable[int(np.argmax(scores))]
        logger.info("PCSPG root %d after %d rooting iterations", chosen, state.iteration)
        return chosen

    def resolve(self, instance: Instance, mu: Optional[float] = None, budget: float = config.ROOTING_BUDGET_CAP,
                seed: int = 0) -> Instance:
        """Instance rooted per its kind; RSTP and already-rooted instances pass through."""
        if instance.root is not None:
            return instance
        if instance.kind == "SPG":
            return instance.with_root(root_spg(instance))
        return instance.with_root(self.root_pcspg(instance, mu=mu, budget=budget, seed=seed))
