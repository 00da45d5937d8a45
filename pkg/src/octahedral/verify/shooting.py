"""
Polish the orbit's collision data by symmetric shooting.

A symmetric orbit leaves the double collision at t = 0 with

    x = 0,  y = z = w,  ẏ = −ż = u,  Γ = 1

and must reach t = T/6 with x = y, ẋ = −ẏ and ż = 0. The hybrid Powell
solver from scipy on (ln w, u, h), started from the discrete orbit, solves
these three conditions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, root

from octahedral.dynamics.state import State
from octahedral.errors import IntegrationError, ShootingError
from octahedral.regularize.integrate import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    RegularizedArc,
    integrate_reg,
    regularized_time,
)
from octahedral.regularize.variables import RegularizedState, from_regularized
from octahedral.symmetry.segment import PeriodicOrbit

logger = logging.getLogger("octahedral.verify")

SHOOTING_TOLERANCE = 1e-10
MAX_EVALUATIONS = 60
# Forward-difference Jacobian with relative step sqrt(FD_EPS) = 1e-7.
FD_EPS = 1e-14


@dataclass
class SymmetricShot:
    w: float
    u: float
    h: float
    residual: float
    iterations: int
    arc: RegularizedArc
    period: float

    def state_at(self, t: float) -> State:
        """Physical state at 0 < t ≤ T/6 on the shot trajectory."""
        s = brentq(lambda s: self.arc.sol(s)[6] - t, 0.0, self.arc.s_end, xtol=1e-15)
        return from_regularized(self.arc.state(s))


def symmetric_collision_state(w: float, u: float, h: float) -> RegularizedState:
    r = np.sqrt(w)
    return RegularizedState(0.0, 1.0, r, 2.0 * u * r, r, -2.0 * u * r, 0.0, 0.0, h)


def _shoot(params, period, s_max, rtol, atol):
    w, u, h = params
    if not w > 0.0:
        raise ShootingError(f"shooting left the cone: w = {w}")

    def reach(s, v):
        return v[6] - period / 6.0

    reach.terminal = True
    reach.direction = 1

    arc = integrate_reg(symmetric_collision_state(w, u, h), (0.0, s_max), rtol, atol, events=[reach])
    if arc.events[0].size == 0:
        raise ShootingError("trajectory did not reach T/6")
    end = from_regularized(arc.state(arc.s_end))
    x, y, _ = end.config.as_tuple()
    vx, vy, vz = end.velocity
    return np.array([x - y, vx + vy, vz]), arc


def shoot_symmetric_orbit(
    orbit: PeriodicOrbit,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    tol: float = SHOOTING_TOLERANCE,
    max_evaluations: int = MAX_EVALUATIONS,
) -> SymmetricShot:
    """
    Raises:
        ShootingError: the solver fails to meet ``tol`` within ``max_evaluations``.
    """
    T = orbit.period
    first = orbit.times <= T / 6.0 * (1.0 + 1e-9)
    s_max = 3.0 * regularized_time(orbit.times[first], orbit.positions[first])[-1]
    params = np.array([orbit.positions[0, 1], orbit.velocities[0, 1], orbit.energy])
    if not (np.all(np.isfinite(params)) and params[0] > 0.0):
        raise ShootingError(f"no usable collision data on the orbit: {params}")

    def unknowns(p):
        return np.array([np.exp(p[0]), p[1], p[2]])

    def residual(p):
        return _shoot(unknowns(p), T, s_max, rtol, atol)[0]

    p0 = np.array([np.log(params[0]), params[1], params[2]])
    try:
        result = root(
            residual,
            p0,
            method="hybr",
            options={"xtol": 1e-13, "maxfev": max_evaluations, "eps": FD_EPS},
        )
        solution = unknowns(result.x)
        F, arc = _shoot(solution, T, s_max, rtol, atol)
    except (np.linalg.LinAlgError, IntegrationError) as e:
        raise ShootingError(f"symmetric shooting failed: {e}") from e

    norm = float(np.max(np.abs(F)))
    logger.debug(f"shooting: residual {norm:.3e} after {result.nfev} evaluations ({result.message})")
    if not norm <= tol:
        raise ShootingError(
            f"no convergence in {result.nfev} evaluations (residual {norm:.3e}): {result.message}"
        )
    return SymmetricShot(*solution, norm, int(result.nfev), arc, T)
