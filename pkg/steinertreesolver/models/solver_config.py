"""
SolverConfig entity: variant labels, running scheme and schedule parameters.
"""
import re
from typing import Optional, Dict, Any, FrozenSet, Iterable, Union

from .. import config
from ..errors import ConfigurationError

_HEURISTICS = ("N", "J", "W")


def parse_variant(text: Union[str, Iterable[str]]) -> FrozenSet[str]:
    """Accepts "NF", "N,F", "n f" or an iterable of labels."""
    if isinstance(text, str):
        return frozenset(ch for ch in re.sub(r"[\s,+]", "", text.upper()))
    return frozenset(label.upper() for label in text)


class SolverConfig:
    """
    Parameters of one solve.
    variant follows the label grammar: "O" alone, "F" alone, "W" alone, or one of N/J optionally with F.
    """

    def __init__(
        self,
        variant: Union[str, Iterable[str]] = "O",
        scheme: str = "increasing",
        depth_override: Optional[int] = None,
        gamma1_start: float = config.GAMMA1_START,
        gamma1_min: float = config.GAMMA1_MIN,
        halving: float = 0.5,
        time_limit: float = config.TIME_LIMIT,
        seed: int = 0,
        window: int = config.STABILITY_WINDOW,
        mu: Optional[float] = None,
        schedule: str = "sequential",
        max_gamma_t: float = config.MAX_GAMMA_T,
        leg_tolerance: float = config.LEG_IMPROVEMENT_TOL,
        overlap_extraction: bool = False,
        plain_iterations: int = config.PLAIN_LEG_ITERATIONS,
    ):
        self.variant = parse_variant(variant)
        self.scheme = scheme
        self.depth_override = depth_override
        self.gamma1_start = float(gamma1_start)
        self.gamma1_min = float(gamma1_min)
        self.halving = float(halving)
        self.time_limit = float(time_limit)
        self.seed = int(seed)
        self.window = int(window)
        self.mu = mu
        self.schedule = schedule
        self.max_gamma_t = float(max_gamma_t)
        self.leg_tolerance = float(leg_tolerance)
        self.overlap_extraction = bool(overlap_extraction)
        self.plain_iterations = int(plain_iterations)

    def validate(self) -> Dict[str, str]:
        """
        Validate the configuration.
        Returns a dictionary of field names to error messages.
        """
        errors = {}
        variant_error = self._validate_variant()
        if variant_error:
            errors["variant"] = variant_error
        if self.scheme not in config.VALID_SCHEMES:
            errors["scheme"] = f"Scheme must be one of {config.VALID_SCHEMES}"
        if self.schedule not in config.VALID_SCHEDULES:
            errors["schedule"] = f"Schedule must be one of {config.VALID_SCHEDULES}"
        if self.depth_override is not None and self.depth_override < 1:
            errors["depth_override"] = "Depth must be at least 1"
        if not self.gamma1_start >= self.gamma1_min > 0:
            errors["gamma1"] = "Need gamma1_start >= gamma1_min > 0"
        if not 0 < self.halving < 1:
            errors["halving"] = "Halving factor must lie in (0, 1)"
        if self.time_limit <= 0:
            errors["time_limit"] = "Time limit must be positive"
        if self.window < 1:
            errors["window"] = "Stability window must be at least 1"
        if self.mu is not None and self.mu <= 0:
            errors["mu"] = "Virtual-root weight must be positive"
        if self.max_gamma_t <= 0:
            errors["max_gamma_t"] = "Leg cap must be positive"
        if self.plain_iterations < 0:
            errors["plain_iterations"] = "Plain leg length cannot be negative"
        return errors

    def _validate_variant(self) -> Optional[str]:
        unknown = self.variant - set(config.VALID_VARIANT_LABELS)
        if unknown:
            return f"Unknown labels: {''.join(sorted(unknown))}"
        if not self.variant:
            return "At least one label is required"
        if "O" in self.variant and len(self.variant) > 1:
            return "O does not combine with other labels"
        if len(self.variant & set(_HEURISTICS)) > 1:
            return "Choose at most one of N, J, W"
        if "W" in self.variant and "F" in self.variant:
            return "F composes with N or J only"
        return None

    def ensure_valid(self) -> "SolverConfig":
        errors = self.validate()
        if errors:
            raise ConfigurationError.from_errors(errors)
        return self

    @property
    def flat(self) -> bool:
        return "F" in self.variant

    @property
    def heuristic(self) -> str:
        """Extraction used at every iteration: O (edge-reweighted MST), N, J or W."""
        for label in _HEURISTICS:
            if label in self.variant:
                return label
        return "O"

    @property
    def label(self) -> str:
        ordered = [lbl for lbl in config.VALID_VARIANT_LABELS if lbl in self.variant and lbl != "F"]
        return "".join(ordered) + ("F" if self.flat else "")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.label,
            "scheme": self.scheme,
            "depth_override": self.depth_override,
            "gamma1_start": self.gamma1_start,
            "gamma1_min": self.gamma1_min,
            "halving": self.halving,
            "time_limit": self.time_limit,
            "seed": self.seed,
            "window": self.window,
            "mu": self.mu,
            "schedule": self.schedule,
            "plain_iterations": self.plain_iterations,
        }

    def __repr__(self) -> str:
        return f"SolverConfig(variant={self.label}, scheme={self.scheme}, time_limit={self.time_limit})"
