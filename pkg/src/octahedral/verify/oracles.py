"""
Independent oracles for the homothetic comparison action.

kepler_homothetic_action integrates the collision–ejection Kepler problem
v̈ = −g/v² in the regularized time s (dt/ds = v), where it becomes linear:

    v'' = 2E v + g,   t' = v,   A' = E v + 2g

and shoots on the energy E so that the apex falls at τ/2.
"""
from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from octahedral.action.homothetic import alpha0
from octahedral.errors import DomainError, ShootingError

KEPLER_RTOL = 1e-12
KEPLER_ATOL = 1e-14
MAX_BRACKET_STEPS = 60


def _half_orbit(g: float, energy: float) -> tuple[float, float]:
    """(time, action) from ejection to apex at the given energy."""
    omega = np.sqrt(-2.0 * energy)

    def rhs(s, y):
        v, dv, t, a = y
        return [dv, 2.0 * energy * v + g, v, energy * v + 2.0 * g]

    def apex(s, y):
        return y[1]

    apex.terminal = True
    apex.direction = -1

    sol = solve_ivp(
        rhs,
        (0.0, 4.0 * np.pi / omega),
        [0.0, 0.0, 0.0, 0.0],
        method="DOP853",
        rtol=KEPLER_RTOL,
        atol=KEPLER_ATOL,
        events=apex,
    )
    if sol.status != 1:
        raise ShootingError(f"apex not reached at energy {energy}")
    _, _, t, a = sol.y_events[0][0]
    return float(t), float(a)


def kepler_homothetic_action(g: float, tau: float) -> float:
    """Action ∫(v̇²/2 + g/v) dt of the collision–ejection orbit of period τ."""
    if not g > 0.0 or not tau > 0.0:
        raise DomainError(f"need g > 0 and tau > 0, got g={g}, tau={tau}")

    def mismatch(energy):
        return _half_orbit(g, energy)[0] - 0.5 * tau

    lo = hi = -1.0
    for _ in range(MAX_BRACKET_STEPS):
        if mismatch(lo) <= 0.0:
            break
        lo *= 4.0
    else:
        raise ShootingError("could not bracket the energy from below")
    for _ in range(MAX_BRACKET_STEPS):
        if mismatch(hi) >= 0.0:
            break
        hi *= 0.25
    else:
        raise ShootingError("could not bracket the energy from above")

    energy = lo if lo == hi else brentq(mismatch, lo, hi, xtol=1e-15, rtol=1e-14)
    return 2.0 * _half_orbit(g, energy)[1]


__all__ = ["alpha0", "kepler_homothetic_action"]
