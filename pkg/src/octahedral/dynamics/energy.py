"""
Energies, equations of motion and cluster diagnostics.

Cluster split used near collisions:

    x-cluster:      U_x = 1/(8x),                      U_0 = U − U_x
                    K_x = ẋ²/2,                        K_0 = K − K_x
    (x,y)-cluster:  U_xy = 1/sqrt(x²+y²) + (1/x+1/y)/8, U_1 = U − U_xy
                    K_xy = (ẋ²+ẏ²)/2,                  K_1 = ż²/2
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from octahedral.errors import DomainError

from .potential import kinetic, potential_gradients, potential_values
from .state import ZERO_THRESHOLD, State


@dataclass(frozen=True)
class EnergyBreakdown:
    kinetic: float
    potential: float
    lagrangian: float
    hamiltonian: float
    h_x: float
    h_xy: float
    k0: float
    u0: float
    k1: float
    u1: float


def _inv(v: float) -> float:
    return np.inf if v <= ZERO_THRESHOLD else 1.0 / v


def _inv_hypot(a: float, b: float) -> float:
    r = float(np.hypot(a, b))
    return np.inf if r <= ZERO_THRESHOLD else 1.0 / r


def cluster_potentials(x: float, y: float, z: float) -> dict:
    """U_x, U_0, U_xy, U_1 at a configuration (+inf where singular)."""
    p_xy, p_xz, p_yz = _inv_hypot(x, y), _inv_hypot(x, z), _inv_hypot(y, z)
    ix, iy, iz = _inv(x), _inv(y), _inv(z)
    return {
        "u_x": ix / 8.0,
        "u_0": p_xy + p_xz + p_yz + (iy + iz) / 8.0,
        "u_xy": p_xy + (ix + iy) / 8.0,
        "u_1": p_xz + p_yz + iz / 8.0,
    }


def energy_breakdown(s: State) -> EnergyBreakdown:
    x, y, z = s.config.as_tuple()
    vx, vy, vz = s.velocity
    k = kinetic(s.velocity)
    u = float(potential_values(s.config.as_array()))
    parts = cluster_potentials(x, y, z)
    k_x = 0.5 * vx * vx
    k_xy = 0.5 * (vx * vx + vy * vy)
    return EnergyBreakdown(
        kinetic=k,
        potential=u,
        lagrangian=k + u,
        hamiltonian=k - u,
        h_x=k_x - parts["u_x"],
        h_xy=k_xy - parts["u_xy"],
        k0=k - k_x,
        u0=parts["u_0"],
        k1=0.5 * vz * vz,
        u1=parts["u_1"],
    )


def hamiltonian(s: State) -> float:
    return energy_breakdown(s).hamiltonian


def eom_rhs(s: State) -> np.ndarray:
    """(velocity, acceleration) with acceleration = ∇U; singular at collisions."""
    accel = potential_gradients(s.config.as_array())
    return np.concatenate([s.velocity_array(), accel])


def eom_vector_field(t: float, y: np.ndarray) -> np.ndarray:
    """First-order form of ẍ = ∇U for solve_ivp; y = (x, y, z, vx, vy, vz)."""
    return np.concatenate([y[3:6], potential_gradients(y[:3])])


def _pair_weights(x: float, y: float, z: float):
    return ((x * x + y * y) ** -1.5, (x * x + z * z) ** -1.5, (y * y + z * z) ** -1.5)


def lagrange_jacobi_xdd(s: State, h_x: Optional[float] = None) -> float:
    """
    Second derivative of the x-cluster inertia I_x = x²:

        Ï_x = 4 h_x + 2 U_x + 2 x ∂U_0/∂x

    h_x defaults to the value carried by the state. Tends to +inf as x → 0⁺.
    """
    x, y, z = s.config.as_tuple()
    if y <= ZERO_THRESHOLD or z <= ZERO_THRESHOLD:
        raise DomainError("x-cluster relation needs y > 0 and z > 0")
    if x <= ZERO_THRESHOLD:
        return np.inf
    if h_x is None:
        h_x = energy_breakdown(s).h_x
    w_xy, w_xz, _ = _pair_weights(x, y, z)
    du0_dx = -x * (w_xy + w_xz)
    return 4.0 * h_x + 2.0 / (8.0 * x) + 2.0 * x * du0_dx


def lagrange_jacobi_xydd(s: State, h_xy: Optional[float] = None) -> float:
    """
    Second derivative of the (x,y)-cluster inertia I_xy = x² + y²:

        Ï_xy = 4 h_xy + 2 U_xy + 2 (x, y)·∇_xy U_1
    """
    x, y, z = s.config.as_tuple()
    if z <= ZERO_THRESHOLD:
        raise DomainError("(x,y)-cluster relation needs z > 0")
    if min(x, y) <= ZERO_THRESHOLD:
        return np.inf
    if h_xy is None:
        h_xy = energy_breakdown(s).h_xy
    _, w_xz, w_yz = _pair_weights(x, y, z)
    u_xy = 1.0 / float(np.hypot(x, y)) + (1.0 / x + 1.0 / y) / 8.0
    radial_u1 = x * (-x * w_xz) + y * (-y * w_yz)
    return 4.0 * h_xy + 2.0 * u_xy + 2.0 * radial_u1


def cluster_energy_rate(s: State) -> tuple[float, float]:
    """(ḣ_x, ḣ_xy) along the flow: ∂U_0/∂x·ẋ and ∇_xy U_1·(ẋ, ẏ)."""
    x, y, z = s.config.as_tuple()
    if min(y, z) <= ZERO_THRESHOLD:
        raise DomainError("cluster energy rate needs y > 0 and z > 0")
    vx, vy, _ = s.velocity
    w_xy, w_xz, w_yz = _pair_weights(x, y, z)
    rate_x = -x * (w_xy + w_xz) * vx
    rate_xy = -x * w_xz * vx - y * w_yz * vy
    return rate_x, rate_xy
