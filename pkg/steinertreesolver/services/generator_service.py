"""
GeneratorService: seeded benchmark instances.
Grid lattices (2D or 3D) and Barabasi-Albert scale-free graphs, uniform (0, 1]
edge weights, terminals sampled without replacement, optional prize-collecting prizes.
"""
import logging
from typing import Optional, Tuple, List

import networkx as nx
import numpy as np

from ..errors import ConfigurationError
from ..models.instance import Instance

logger = logging.getLogger(__name__)


class GeneratorService:
    """Builds Instance objects; serialization is left to StpRepository."""

    def __init__(self, weight_decimals: int = 6):
        self.weight_decimals = weight_decimals

    def grid(
        self,
        nx_: int,
        ny: int,
        nz: Optional[int] = None,
        terminals: int = 2,
        prizes: Optional[Tuple[float, float]] = None,
        seed: int = 0,
    ) -> Instance:
        dims = [nx_, ny] + ([nz] if nz else [])
        if any(d < 1 for d in dims):
            raise ConfigurationError("grid dimensions must be positive")
        graph = nx.grid_graph(dim=dims)
        name = "grid" + "x".join(str(d) for d in dims)
        return self._finish(graph, terminals, prizes, seed, name)

    def scale_free(
        self,
        n: int,
        m: int,
        terminals: int = 2,
        prizes: Optional[Tuple[float, float]] = None,
        seed: int = 0,
    ) -> Instance:
        """Barabasi-Albert growth from an m-clique: C(m, 2) + m (n - m) edges."""
        if not 1 <= m < n:
            raise ConfigurationError("scale-free generation needs 1 <= m < n")
        # a single-vertex seed has no degree to attach to; the default star seed has the same edge count
        initial = nx.complete_graph(m) if m > 1 else None
        graph = nx.barabasi_albert_graph(n, m, seed=seed, initial_graph=initial)
        return self._finish(graph, terminals, prizes, seed, f"sf{n}m{m}")

    def _finish(
        self,
        graph: nx.Graph,
        terminals: int,
        prizes: Optional[Tuple[float, float]],
        seed: int,
        name: str,
    ) -> Instance:
        nodes = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        n = len(nodes)
        if not 1 <= terminals <= n:
            raise ConfigurationError(f"cannot pick {terminals} terminals from {n} vertices")

        rng = np.random.default_rng(seed)
        edges = sorted((min(index[a], index[b]), max(index[a], index[b])) for a, b in graph.edges())
        weights = np.round(1.0 - rng.random(len(edges)), self.weight_decimals)
        weights = np.maximum(weights, 10.0 ** -self.weight_decimals)
        picked = sorted(int(v) for v in rng.choice(n, size=terminals, replace=False))
        specs: List[Tuple[int, int, float, float]] = [
            (a, b, float(w), float(w)) for (a, b), w in zip(edges, weights)
        ]

        if prizes is None:
            instance = Instance.from_edges(n, specs, kind="SPG", terminals=picked, name=name)
        else:
            lo, hi = prizes
            if not 0 <= lo <= hi:
                raise ConfigurationError("prize range must satisfy 0 <= lo <= hi")
            values = np.zeros(n)
            values[picked] = np.round(rng.uniform(lo, hi, size=terminals), self.weight_decimals)
            instance = Instance.from_edges(n, specs, prizes=values, kind="PCSPG", name=name)
        logger.info("generated %r", instance)
        return instance
