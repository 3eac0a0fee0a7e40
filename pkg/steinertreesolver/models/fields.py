"""
Depth tables over extended reals.
A MessageField / LocalField row holds 2D+1 values for depths -D..D; column D is depth 0.
-inf is a finite sentinel so that no arithmetic path can produce NaN.
"""
import numpy as np

# Most-negative quarter of the float range: two sentinels still add without overflow.
NEG_INF = -np.finfo(np.float64).max / 4.0

# Anything below this is treated as forbidden.
FORBIDDEN = NEG_INF / 2.0

# One row per oriented edge, 2D+1 columns
MessageField = np.ndarray
LocalField = np.ndarray


def saturate(values: np.ndarray) -> np.ndarray:
    """Clamp to the sentinel; also absorbs -inf produced by overflowing products."""
    return np.maximum(values, NEG_INF)


def sat_add(a, b):
    """Saturating addition: -inf + x = -inf."""
    return np.maximum(np.add(a, b), NEG_INF)


def is_forbidden(values) -> np.ndarray:
    return np.asarray(values) <= FORBIDDEN


def normalize_rows(table: np.ndarray) -> np.ndarray:
    """
    Shift every row so that its maximum is 0.
    Rows that are entirely forbidden stay forbidden; forbidden entries stay exactly NEG_INF.
    """
    table = np.asarray(table, dtype=np.float64)
    forbidden = table <= FORBIDDEN
    peak = table.max(axis=-1, keepdims=True)
    shifted = np.where(peak > FORBIDDEN, table - peak, NEG_INF)
    shifted[forbidden] = NEG_INF
    return saturate(shifted)


def depth_index(d: int, bound: int) -> int:
    """Column of depth d in a 2D+1 row."""
    return d + bound


def sat_scale(values: np.ndarray, factor: float) -> np.ndarray:
    """factor * values with forbidden entries kept at the sentinel."""
    with np.errstate(over="ignore"):
        scaled = factor * np.asarray(values)
    scaled = np.where(np.asarray(values) <= FORBIDDEN, NEG_INF, scaled)
    return saturate(scaled)
