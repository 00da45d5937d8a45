"""
Regularized vector field in the rescaled time s, dt/ds = γ²υ²ζ².

With q_k = θ_k², P_k the product of the other two q, and the energy h held
fixed, for each axis k:

    θ_k' = P_k Θ_k / 4
    Θ_k' = 2θ_k (P_k h − P_k f_k) − 2θ_k⁵ P_k Σ_{j≠k} (q_k² + q_j²)^(-3/2)
    t'   = q_0 q_1 q_2

where P_k f_k is cleared of the 1/θ² poles, so the field stays finite at a
single vanishing root.
"""
from __future__ import annotations

import numpy as np

from octahedral.dynamics.state import ZERO_THRESHOLD
from octahedral.errors import CollisionError

from .variables import RegularizedState

_OTHERS = ((1, 2), (0, 2), (0, 1))


def reg_vector_field(s: float, v: np.ndarray, h: float) -> np.ndarray:
    theta = v[0:6:2]
    Theta = v[1:6:2]
    if np.count_nonzero(np.abs(theta) <= ZERO_THRESHOLD) >= 2:
        raise CollisionError("two roots vanish together: collision is not regularizable")
    q = theta * theta
    hyp = {
        (0, 1): np.hypot(q[0], q[1]),
        (0, 2): np.hypot(q[0], q[2]),
        (1, 2): np.hypot(q[1], q[2]),
    }
    pairs = 1.0 / hyp[(0, 1)] + 1.0 / hyp[(0, 2)] + 1.0 / hyp[(1, 2)]
    out = np.empty(7)
    for k, (j, l) in enumerate(_OTHERS):
        P = q[j] * q[l]
        Pf = (Theta[j] ** 2 * q[l] + Theta[l] ** 2 * q[j]) / 8.0 - P * pairs - (q[j] + q[l]) / 8.0
        force = hyp[tuple(sorted((k, j)))] ** -3 + hyp[tuple(sorted((k, l)))] ** -3
        out[2 * k] = 0.25 * P * Theta[k]
        out[2 * k + 1] = 2.0 * theta[k] * (P * h - Pf) - 2.0 * theta[k] ** 5 * P * force
    out[6] = q[0] * q[1] * q[2]
    return out


def reg_rhs(r: RegularizedState) -> np.ndarray:
    """d/ds of [γ, Γ, υ, Υ, ζ, Z, t] at r, using the energy stored in r."""
    return reg_vector_field(r.s, r.as_vector(), r.h)
