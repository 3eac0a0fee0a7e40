"""
Shared fixtures: small hand-built instances.
"""
import numpy as np
import pytest

from steinertreesolver.models.instance import Instance
from steinertreesolver.services.maxsum_engine import MaxSumEngine


def make_random_instance(rng: np.random.Generator, n: int, extra_edges: int, kind: str = "RSTP",
                         terminals: int = 0, prize_high: float = 0.0, root: int = 0,
                         symmetric: bool = True) -> Instance:
    """
    Connected random graph: a random spanning tree plus extra edges, weights in (0, 1].
    With symmetric=False the two orientations of an edge get independent weights.
    """
    edges = {}
    order = rng.permutation(n)
    for pos in range(1, n):
        a, b = int(order[pos]), int(order[rng.integers(0, pos)])
        edges[(min(a, b), max(a, b))] = None
    attempts = 0
    while len(edges) < n - 1 + extra_edges and attempts < 10 * (extra_edges + 1):
        a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
        edges[(min(a, b), max(a, b))] = None
        attempts += 1
    specs = []
    for a, b in sorted(edges):
        w_ab = float(1.0 - rng.random())
        w_ba = w_ab if symmetric else float(1.0 - rng.random())
        specs.append((a, b, w_ab, w_ba))
    prizes = np.zeros(n)
    picked = [int(v) for v in rng.choice([v for v in range(n) if v != root], size=terminals, replace=False)]
    if kind == "SPG":
        return Instance.from_edges(n, specs, root=root, kind="SPG", terminals=picked)
    prizes[picked] = rng.uniform(0.0, prize_high, size=len(picked))
    return Instance.from_edges(n, specs, prizes=prizes, root=root, kind=kind)


@pytest.fixture
def engine():
    return MaxSumEngine()


@pytest.fixture
def two_node():
    """r - a, w = 3, c_a = 5."""
    return Instance.from_edges(2, [(0, 1, 3.0, 3.0)], prizes=[0.0, 5.0], root=0)


@pytest.fixture
def path3():
    """r - a - b with w_ar = 1, w_ba = 2, c_a = 0, c_b = 10."""
    return Instance.from_edges(3, [(0, 1, 1.0, 1.0), (1, 2, 2.0, 2.0)], prizes=[0.0, 0.0, 10.0], root=0)


@pytest.fixture
def triangle_spg():
    return Instance.from_edges(
        3, [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0), (0, 2, 1.0, 1.0)], root=0, kind="SPG", terminals=[0, 1, 2]
    )


@pytest.fixture
def branched():
    """
    Ten vertices, root 2: chain 2-3-4-5 branching at 5 into 0 and 1, a detached
    triangle 6-7-8 and the isolated vertex 9. Vertices 3, 0 and 1 carry prizes.
    """
    specs = [
        (2, 3, 1.0, 1.0),
        (3, 4, 1.0, 1.0),
        (4, 5, 1.0, 1.0),
        (5, 0, 1.0, 1.0),
        (5, 1, 1.0, 1.0),
        (6, 7, 1.0, 1.0),
        (7, 8, 1.0, 1.0),
        (8, 6, 1.0, 1.0),
    ]
    prizes = np.zeros(10)
    prizes[[3, 0, 1]] = 20.0
    return Instance.from_edges(10, specs, prizes=prizes, root=2)


@pytest.fixture
def chain5():
    """r - t - v - w - t' with prizes only at t and t'."""
    specs = [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0), (2, 3, 1.0, 1.0), (3, 4, 1.0, 1.0)]
    return Instance.from_edges(5, specs, prizes=[0.0, 10.0, 0.0, 0.0, 10.0], root=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
