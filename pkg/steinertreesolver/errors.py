"""
Exceptions raised by the solver.
All of them are ValueErrors so callers can treat bad input uniformly.
"""
from typing import Dict, Optional


class SteinerError(ValueError):
    """Base class for every solver error."""


class StpParseError(SteinerError):
    """Malformed SteinLib input."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class InstanceError(SteinerError):
    """Instance violates its invariants (weights, prizes, adjacency, root)."""

    @classmethod
    def from_errors(cls, errors: Dict[str, str]) -> "InstanceError":
        return cls("; ".join(f"{field}: {msg}" for field, msg in errors.items()))


class StructuralError(SteinerError):
    """A tree or representation does not match the instance."""


class DepthBoundError(SteinerError):
    """A tree does not fit in the requested depth bound D."""


class ConfigurationError(SteinerError):
    """Invalid solver or engine parameters."""

    @classmethod
    def from_errors(cls, errors: Dict[str, str]) -> "ConfigurationError":
        return cls("; ".join(f"{field}: {msg}" for field, msg in errors.items()))


class InfeasibleError(SteinerError):
    """No feasible tree exists or none has been found."""


class OracleBudgetError(SteinerError):
    """Instance too large for exhaustive enumeration."""


class GapDomainError(SteinerError):
    """Gap requested against a zero reference energy."""
