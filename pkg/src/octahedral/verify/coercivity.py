"""
Length bound behind coercivity of the action.

A loop of the symmetric class whose first third runs between the planes
x = 0 and y = 0 has length ℒ ≥ a·max|X| with

    a = min over α in [0, π/3] of sin α + sin(π/3 − α) = √3/2
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from octahedral.symmetry.segment import PeriodicOrbit


class CoercivityDiagnostic(NamedTuple):
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def _angle_sum(alpha: float) -> float:
    return np.sin(alpha) + np.sin(np.pi / 3.0 - alpha)


def coercivity_constant() -> float:
    interior = minimize_scalar(_angle_sum, bounds=(0.0, np.pi / 3.0), method="bounded")
    return float(min(interior.fun, _angle_sum(0.0), _angle_sum(np.pi / 3.0)))


def path_length_bound(points) -> CoercivityDiagnostic:
    """(polyline length, a·max norm) for any sampled path."""
    p = np.asarray(points, dtype=float)
    length = float(np.sum(np.linalg.norm(np.diff(p, axis=0), axis=1)))
    return CoercivityDiagnostic(length, coercivity_constant() * float(np.max(np.linalg.norm(p, axis=1))))


def coercivity_diagnostic(orbit: PeriodicOrbit) -> CoercivityDiagnostic:
    """The bound on the orbit's first third, samples t ∈ [0, T/3]."""
    end = orbit.period / 3.0 * (1.0 + 1e-9)
    return path_length_bound(orbit.positions[orbit.times <= end])
