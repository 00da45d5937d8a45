"""
Potential, kinetic energy and force field of the reduced problem.

With masses 1/2:

    U(x, y, z) = 1/sqrt(x²+y²) + 1/sqrt(x²+z²) + 1/sqrt(y²+z²) + (1/x + 1/y + 1/z)/8
    K(v)       = |v|² / 2

Array forms accept any leading shape (..., 3) so quadrature and integrators
evaluate whole meshes at once.
"""
from __future__ import annotations

import numpy as np

from octahedral.errors import DomainError, SingularityError

from .state import ZERO_THRESHOLD, Configuration


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.shape[-1] != 3:
        raise DomainError(f"expected trailing dimension 3, got shape {pts.shape}")
    if np.any(pts < 0.0):
        raise DomainError("negative coordinate: configuration outside the cone S")
    return pts


def potential_values(points) -> np.ndarray:
    """U at every point; +inf where any coordinate vanishes."""
    pts = _as_points(points)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    collision = np.min(pts, axis=-1) <= ZERO_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        pairs = 1.0 / np.hypot(x, y) + 1.0 / np.hypot(x, z) + 1.0 / np.hypot(y, z)
        self_terms = (1.0 / x + 1.0 / y + 1.0 / z) / 8.0
        values = pairs + self_terms
    return np.where(collision, np.inf, values)


def potential_gradients(points) -> np.ndarray:
    """Analytic ∇U at every point; raises SingularityError on any collision."""
    pts = _as_points(points)
    if np.any(np.min(pts, axis=-1) <= ZERO_THRESHOLD):
        raise SingularityError("potential gradient is singular at a collision")
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    r_xy = (x * x + y * y) ** -1.5
    r_xz = (x * x + z * z) ** -1.5
    r_yz = (y * y + z * z) ** -1.5
    grad = np.empty_like(pts)
    grad[..., 0] = -x * (r_xy + r_xz) - 1.0 / (8.0 * x * x)
    grad[..., 1] = -y * (r_xy + r_yz) - 1.0 / (8.0 * y * y)
    grad[..., 2] = -z * (r_xz + r_yz) - 1.0 / (8.0 * z * z)
    return grad


def potential(c: Configuration) -> float:
    return float(potential_values(c.as_array()))


def potential_gradient(c: Configuration) -> np.ndarray:
    return potential_gradients(c.as_array())


def kinetic(v) -> float:
    v = np.asarray(v, dtype=float)
    return 0.5 * float(np.dot(v, v))


def kinetic_values(velocities) -> np.ndarray:
    v = np.asarray(velocities, dtype=float)
    return 0.5 * np.sum(v * v, axis=-1)


def hamiltonian_values(positions, velocities) -> np.ndarray:
    """K − U row by row (−inf potential rows give nan, callers mask collisions)."""
    with np.errstate(invalid="ignore"):
        return kinetic_values(velocities) - potential_values(positions)
