"""
Configuration and phase-space state of the reduced octahedral problem.

The six bodies sit in symmetric pairs on the coordinate axes, so a
configuration is the point (x, y, z) of the closed positive cone S.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from octahedral.errors import DomainError

# Coordinates at or below this are treated as an exact collision.
ZERO_THRESHOLD = 1e-300

COLLISION_KINDS = ("none", "double", "quadruple", "total")


@dataclass(frozen=True)
class Configuration:
    """Point (x, y, z) of the cone S."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if min(self.x, self.y, self.z) < 0.0:
            raise DomainError(f"configuration outside the cone S: {self.as_tuple()}")

    @classmethod
    def from_array(cls, values) -> "Configuration":
        x, y, z = (float(v) for v in np.asarray(values, dtype=float).ravel()[:3])
        return cls(x, y, z)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @property
    def vanishing_count(self) -> int:
        return sum(v <= ZERO_THRESHOLD for v in self.as_tuple())

    @property
    def is_collision(self) -> bool:
        return self.vanishing_count > 0

    @property
    def collision_kind(self) -> str:
        """'none', 'double', 'quadruple' or 'total'."""
        return COLLISION_KINDS[self.vanishing_count]


@dataclass(frozen=True)
class State:
    """Configuration plus the velocity (vx, vy, vz)."""

    config: Configuration
    velocity: Tuple[float, float, float]

    @classmethod
    def from_array(cls, values) -> "State":
        arr = np.asarray(values, dtype=float).ravel()
        return cls(Configuration.from_array(arr[:3]), tuple(float(v) for v in arr[3:6]))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.config.as_array(), np.asarray(self.velocity, dtype=float)])

    def velocity_array(self) -> np.ndarray:
        return np.asarray(self.velocity, dtype=float)
