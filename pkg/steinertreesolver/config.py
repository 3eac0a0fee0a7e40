"""
Solver configuration.
Defaults for the Max-Sum engine, the solver driver and the oracle.
Every value can be overridden with a STEINER_<NAME> environment variable.
"""
import os
from typing import Tuple


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(f"STEINER_{name}")
    return float(raw) if raw else default


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"STEINER_{name}")
    return int(raw) if raw else default


# Reinforcement schedule: gamma1 is halved from START down to MIN
GAMMA1_START = _env_float("GAMMA1_START", 1e-2)
GAMMA1_MIN = _env_float("GAMMA1_MIN", 1e-5)

# A leg stops once gamma_t = gamma1 * t passes this value
MAX_GAMMA_T = _env_float("MAX_GAMMA_T", 10.0)

# Iterations of the unreinforced (gamma1 = 0) leg run before the schedule; 0 skips it
PLAIN_LEG_ITERATIONS = _env_int("PLAIN_LEG_ITERATIONS", 100)

# Decisional variables must repeat this many times to declare convergence
STABILITY_WINDOW = _env_int("STABILITY_WINDOW", 50)

# Weight noise, relative to the largest edge weight
NOISE_SCALE = _env_float("NOISE_SCALE", 1e-9)

# Wall-clock budget in seconds
TIME_LIMIT = _env_float("TIME_LIMIT", 60.0)

# Relative energy improvement under which the gamma1 loop stops early
LEG_IMPROVEMENT_TOL = _env_float("LEG_IMPROVEMENT_TOL", 1e-6)

# Budget of the PCSPG rooting pre-pass: min(fraction * time limit, cap)
ROOTING_BUDGET_FRACTION = _env_float("ROOTING_BUDGET_FRACTION", 0.1)
ROOTING_BUDGET_CAP = _env_float("ROOTING_BUDGET_CAP", 60.0)

# Oracle enumeration budgets
ORACLE_MAX_VERTICES = _env_int("ORACLE_MAX_VERTICES", 14)
ORACLE_MAX_EDGES = _env_int("ORACLE_MAX_EDGES", 20)
EXHAUSTIVE_MAX_DEGREE = _env_int("EXHAUSTIVE_MAX_DEGREE", 4)
EXHAUSTIVE_MAX_DEPTH = _env_int("EXHAUSTIVE_MAX_DEPTH", 3)

# Prize range for generated PCSPG instances
DEFAULT_PRIZE_RANGE: Tuple[float, float] = (0.0, 15.0)

LOG_LEVEL = os.environ.get("STEINER_LOG_LEVEL", "WARNING")

# Valid instance kinds
VALID_KINDS = ["SPG", "PCSPG", "RSTP"]

# Variant labels: O original, N node reweighting, J shortest path tree,
# W Goemans-Williamson, F flat model
VALID_VARIANT_LABELS = ["O", "N", "J", "W", "F"]

# Running schemes
VALID_SCHEMES = ["increasing", "bounded"]

# Engine update schedules
VALID_SCHEDULES = ["sequential", "synchronous"]

# Trace CSV layout
TRACE_COLUMNS = ["time_s", "iter", "label", "energy", "feasible", "D", "gamma1"]
