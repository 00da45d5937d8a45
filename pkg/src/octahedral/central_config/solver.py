"""
Central configurations of the reduced octahedral problem.

A configuration X is central when ∇U(X) is parallel to X. Componentwise,
with r_ab = (a² + b²)^(-3/2):

    1/(8x³) + r_xy + r_xz + λ = 0
    1/(8y³) + r_xy + r_yz + λ = 0
    1/(8z³) + r_xz + r_yz + λ = 0

Appending |X|² = 1 makes the system square in (x, y, z, λ); its only
solution in the open cone is the regular octahedron (1, 1, 1)/√3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from octahedral.dynamics.potential import potential_values
from octahedral.dynamics.state import Configuration
from octahedral.errors import CentralConfigError, SingularityError

logger = logging.getLogger("octahedral.central_config")

RESIDUAL_TOLERANCE = 1e-12
MAX_ITERATIONS = 50
MAX_HALVINGS = 40


@dataclass(frozen=True)
class CentralConfigSolution:
    config: Configuration
    lam: float
    residual_norm: float
    iterations: int


def _lhs(p: np.ndarray) -> np.ndarray:
    x, y, z = p
    r_xy = (x * x + y * y) ** -1.5
    r_xz = (x * x + z * z) ** -1.5
    r_yz = (y * y + z * z) ** -1.5
    return np.array(
        [
            1.0 / (8.0 * x**3) + r_xy + r_xz,
            1.0 / (8.0 * y**3) + r_xy + r_yz,
            1.0 / (8.0 * z**3) + r_xz + r_yz,
        ]
    )


def cc_residual(c: Configuration, lam: float) -> np.ndarray:
    if c.is_collision:
        raise SingularityError(f"central configuration residual undefined at {c.as_tuple()}")
    return _lhs(c.as_array()) + lam


def _augmented(u: np.ndarray) -> np.ndarray:
    p, lam = u[:3], u[3]
    return np.append(_lhs(p) + lam, p @ p - 1.0)


def _jacobian(u: np.ndarray) -> np.ndarray:
    x, y, z = u[:3]
    s_xy = (x * x + y * y) ** -2.5
    s_xz = (x * x + z * z) ** -2.5
    s_yz = (y * y + z * z) ** -2.5
    return np.array(
        [
            [-3.0 / (8.0 * x**4) - 3.0 * x * (s_xy + s_xz), -3.0 * y * s_xy, -3.0 * z * s_xz, 1.0],
            [-3.0 * x * s_xy, -3.0 / (8.0 * y**4) - 3.0 * y * (s_xy + s_yz), -3.0 * z * s_yz, 1.0],
            [-3.0 * x * s_xz, -3.0 * y * s_yz, -3.0 / (8.0 * z**4) - 3.0 * z * (s_xz + s_yz), 1.0],
            [2.0 * x, 2.0 * y, 2.0 * z, 0.0],
        ]
    )


def cc_solve(
    start: Configuration,
    tol: float = RESIDUAL_TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> CentralConfigSolution:
    """
    Damped Newton iteration on the augmented system from a strictly
    interior start. The start is first scaled onto the unit sphere.

    Raises:
        CentralConfigError: singular Jacobian or no convergence within budget.
    """
    if start.is_collision:
        raise CentralConfigError("central configuration search needs an interior start")
    p = start.as_array()
    p = p / np.linalg.norm(p)
    u = np.append(p, -np.mean(_lhs(p)))
    F = _augmented(u)

    for iteration in range(max_iterations + 1):
        if np.max(np.abs(F)) <= tol:
            logger.debug(f"Central configuration converged in {iteration} iterations")
            return CentralConfigSolution(
                Configuration(*u[:3]), float(u[3]), float(np.max(np.abs(F))), iteration
            )
        if iteration == max_iterations:
            break
        try:
            step = np.linalg.solve(_jacobian(u), -F)
        except np.linalg.LinAlgError as e:
            raise CentralConfigError(f"singular Jacobian at {u[:3]}") from e

        norm = np.linalg.norm(F)
        alpha = 1.0
        for _ in range(MAX_HALVINGS):
            trial = u + alpha * step
            if np.all(trial[:3] > 0.0):
                F_trial = _augmented(trial)
                if np.linalg.norm(F_trial) < norm or np.max(np.abs(F_trial)) <= tol:
                    break
            alpha *= 0.5
        else:
            raise CentralConfigError(f"Newton step stalled at iteration {iteration}")
        u, F = trial, F_trial

    raise CentralConfigError(
        f"no convergence after {max_iterations} iterations (residual {np.max(np.abs(F)):.3e})"
    )


def scale_invariant_potential(c: Configuration) -> float:
    """Ũ(X) = |X|·U(X)."""
    p = c.as_array()
    return float(np.linalg.norm(p) * potential_values(p))


def curly_g() -> float:
    """Ũ at the regular octahedron, 3√3(1/√2 + 1/8) ≈ 4.3237537."""
    side = 1.0 / np.sqrt(3.0)
    return scale_invariant_potential(Configuration(side, side, side))
