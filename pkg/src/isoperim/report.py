"""Uniform result record for every inequality check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to JSON-ready builtins."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality check.

    ``slack`` is oriented so that a non-negative value means the inequality
    holds; ``passed`` is ``slack >= -tolerance``.  Each checker documents its
    own orientation of ``lhs`` and ``rhs``.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for attr in ("lhs", "rhs", "slack", "tolerance"):
            value = float(getattr(self, attr))
            if not math.isfinite(value):
                raise ValueError(f"{self.name}: {attr} is not finite ({value})")
            object.__setattr__(self, attr, value)
        if self.tolerance <= 0:
            raise ValueError(f"{self.name}: tolerance must be positive")
        object.__setattr__(self, "metadata", _plain(dict(self.metadata)))

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckReport":
        return cls(
            name=data["name"],
            lhs=data["lhs"],
            rhs=data["rhs"],
            slack=data["slack"],
            tolerance=data["tolerance"],
            metadata=data.get("metadata", {}),
        )
