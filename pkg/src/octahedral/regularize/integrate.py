"""
Integration of the reduced problem through double collisions.

Collision-free arcs use the physical equations of motion. When one
coordinate drops below ``switch_ratio`` times the geometric mean of the
other two, the state is lifted to the square-root variables, integrated in
the rescaled time s through the zero of that root, and handed back to the
physical integrator once the coordinate is above the threshold again.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from octahedral.dynamics.energy import eom_vector_field, hamiltonian
from octahedral.dynamics.potential import hamiltonian_values
from octahedral.dynamics.state import State
from octahedral.errors import CollisionError, DomainError, IntegrationError

from .flow import reg_vector_field
from .variables import RegularizedState, from_regularized, reg_hamiltonian, to_regularized

logger = logging.getLogger("octahedral.regularize")

DEFAULT_RTOL = 1e-12
DEFAULT_ATOL = 1e-12
SWITCH_RATIO = 1e-3
METHOD = "DOP853"

# Tighter control inside a passage: dH/dΘ_k grows like 1/x_k at the switch.
PASSAGE_RTOL = 1e-13
PASSAGE_ATOL_SCALE = 1e-4
# Drift is sampled where the smallest q_k is above this fraction of the largest.
DRIFT_SAMPLE_RATIO = 1e-5

_OTHERS = ((1, 2), (0, 2), (0, 1))


def below_switch(positions: np.ndarray, ratio: float = SWITCH_RATIO) -> np.ndarray:
    """Axes whose coordinate is under ratio·sqrt(product of the other two)."""
    p = np.asarray(positions, dtype=float)
    return np.array([p[k] < ratio * np.sqrt(p[j] * p[l]) for k, (j, l) in enumerate(_OTHERS)])


@dataclass
class PhysicalArc:
    t_start: float
    t_end: float
    sol: object
    stop_reason: str
    axis: Optional[int]
    energy: float
    energy_drift: float

    @property
    def final_state(self) -> State:
        return State.from_array(self.sol(self.t_end))

    def contains(self, t: float) -> bool:
        lo, hi = sorted((self.t_start, self.t_end))
        return lo <= t <= hi

    def state_vector(self, t) -> np.ndarray:
        return self.sol(t)


@dataclass
class RegularizedArc:
    s_end: float
    sol: object
    h: float
    energy_drift: float
    events: List[np.ndarray] = field(default_factory=list)

    def state(self, s: float) -> RegularizedState:
        return RegularizedState.from_vector(self.sol(s), s, self.h)


def _collision_events(ratio: float):
    events = []
    for k, (j, l) in enumerate(_OTHERS):
        def event(t, y, k=k, j=j, l=l):
            return y[k] - ratio * np.sqrt(abs(y[j] * y[l]))
        event.terminal = True
        event.direction = -1
        events.append(event)
    return events


def integrate_physical(
    s0: State,
    t_span: Tuple[float, float],
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    switch_ratio: float = SWITCH_RATIO,
) -> PhysicalArc:
    """
    Adaptive Runge–Kutta on the physical equations, forward or backward.

    Stops at the end of the span or when a coordinate falls under the
    switch threshold (``stop_reason`` 'span_end' or 'collision_approach').

    Raises:
        CollisionError: the start state is at a collision.
        IntegrationError: the integrator fails (step-size underflow).
    """
    if s0.config.is_collision:
        raise CollisionError("physical integration cannot start at a collision")
    h0 = hamiltonian(s0)
    sol = solve_ivp(
        eom_vector_field,
        t_span,
        s0.as_array(),
        method=METHOD,
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=_collision_events(switch_ratio),
    )
    if sol.status < 0:
        raise IntegrationError(f"physical integration failed: {sol.message}")

    axis = None
    t_end = float(t_span[1])
    reason = "span_end"
    if sol.status == 1:
        for k, hits in enumerate(sol.t_events):
            if hits.size:
                axis, t_end, reason = k, float(hits[0]), "collision_approach"
                break
    drift = float(np.max(np.abs(hamiltonian_values(sol.y[:3].T, sol.y[3:].T) - h0)))
    return PhysicalArc(float(t_span[0]), t_end, sol.sol, reason, axis, h0, drift)


def integrate_reg(
    r0: RegularizedState,
    s_span: Tuple[float, float],
    rtol: float = DEFAULT_RTOL,
    atol=DEFAULT_ATOL,
    events=None,
) -> RegularizedArc:
    """
    Integrate the regularized field in s; t(s) is carried as the last component.

    Energy drift is measured where all roots are away from zero.
    """
    if np.count_nonzero(r0.roots == 0.0) >= 2:
        raise CollisionError("regularized integration cannot start at a quadruple collision")
    h = r0.h
    sol = solve_ivp(
        lambda s, v: reg_vector_field(s, v, h),
        s_span,
        r0.as_vector(),
        method=METHOD,
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=events,
    )
    if sol.status < 0:
        raise IntegrationError(f"regularized integration failed: {sol.message}")

    theta = sol.y[0:6:2]
    q = theta**2
    away = np.min(q, axis=0) > DRIFT_SAMPLE_RATIO * np.max(q, axis=0)
    drift = 0.0
    for col in np.flatnonzero(away):
        r = RegularizedState.from_vector(sol.y[:, col], sol.t[col], r0.h)
        drift = max(drift, abs(reg_hamiltonian(r) - r0.h))
    s_end = float(sol.t[-1])
    return RegularizedArc(s_end, sol.sol, r0.h, drift, list(sol.t_events or []))


@dataclass
class Passage:
    """One regularized transit of a double collision."""

    axis: int
    direction: int
    t_start: float
    t_end: float
    t_collision: float
    arc: RegularizedArc
    state_in: State
    state_out: State
    energy_in: float
    energy_out: float

    @property
    def energy_drift(self) -> float:
        return max(self.arc.energy_drift, abs(self.energy_out - self.energy_in))

    def contains(self, t: float) -> bool:
        lo, hi = sorted((self.t_start, self.t_end))
        return lo <= t <= hi

    def _s_at(self, t: float) -> float:
        if t == self.t_start:
            return 0.0
        if t == self.t_end:
            return self.arc.s_end
        lo, hi = sorted((0.0, self.arc.s_end))
        return brentq(lambda s: self.arc.sol(s)[6] - t, lo, hi, xtol=1e-15)

    def state_vector(self, t: float) -> np.ndarray:
        """[x, y, z, vx, vy, vz] at physical time t inside the passage."""
        state = from_regularized(self.arc.state(self._s_at(t)))
        return state.as_array()


def continue_through_collision(
    state: State,
    h: Optional[float] = None,
    t: float = 0.0,
    direction: int = 1,
    axis: Optional[int] = None,
    switch_ratio: float = SWITCH_RATIO,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> Passage:
    """
    Carry a state approaching a double collision to the far side.

    Args:
        state: physical state near the collision, moving toward it in the
            integration direction.
        h: total energy, by default that of ``state``.
        t: physical time of ``state``.
        direction: +1 forward in time, −1 backward.
        axis: vanishing coordinate, by default the smallest one.

    Raises:
        CollisionError: more than one coordinate is under the switch threshold.
        IntegrationError: the far-side threshold is not reached.
    """
    if direction not in (1, -1):
        raise DomainError(f"direction must be +1 or -1, got {direction}")
    p = state.config.as_array()
    if np.count_nonzero(below_switch(p, switch_ratio)) >= 2:
        raise CollisionError("two coordinates approach zero together")
    k = int(np.argmin(p)) if axis is None else axis
    j, l = _OTHERS[k]
    if h is None:
        h = hamiltonian(state)

    r0 = to_regularized(state, h, (1, 1, 1), t)

    def hits_zero(s, v):
        return v[2 * k]

    def leaves(s, v):
        return v[2 * k] + np.sqrt(switch_ratio * abs(v[2 * j] * v[2 * l]))

    leaves.terminal = True
    leaves.direction = -1

    threshold = switch_ratio * np.sqrt(p[j] * p[l])
    speed = 0.25 * p[j] * p[l]
    span = 10.0 * 2.0 * np.sqrt(max(threshold, p[k])) / speed
    tight = np.full(7, PASSAGE_ATOL_SCALE * atol)
    tight[6] = atol
    arc = integrate_reg(
        r0, (0.0, direction * span), min(rtol, PASSAGE_RTOL), tight, events=[hits_zero, leaves]
    )

    if arc.events[1].size == 0:
        raise IntegrationError(f"collision passage along axis {k} did not reach the far-side threshold")
    s_end = float(arc.events[1][0])
    if arc.events[0].size == 0:
        raise IntegrationError(f"root {k} never vanished during the passage")
    t_collision = float(arc.sol(arc.events[0][0])[6])

    arc = RegularizedArc(s_end, arc.sol, h, arc.energy_drift, arc.events)
    end = arc.state(s_end)
    state_out = from_regularized(end)
    energy_out = hamiltonian(state_out)
    logger.debug(
        f"Passage along axis {k}: collision at t = {t_collision!r}, "
        f"energy {h!r} -> {energy_out!r}"
    )
    return Passage(
        k, direction, t, end.t, t_collision, arc, state, state_out, h, energy_out
    )


@dataclass
class Propagation:
    """Alternating physical arcs and collision passages over one time span."""

    t_start: float
    t_end: float
    energy: float
    pieces: List[object] = field(default_factory=list)

    @property
    def arcs(self) -> List[PhysicalArc]:
        return [p for p in self.pieces if isinstance(p, PhysicalArc)]

    @property
    def passages(self) -> List[Passage]:
        return [p for p in self.pieces if isinstance(p, Passage)]

    @property
    def energy_drift(self) -> float:
        drifts = [arc.energy_drift for arc in self.arcs] + [p.energy_drift for p in self.passages]
        return max(drifts, default=0.0)

    def state_vector(self, t: float) -> np.ndarray:
        for piece in self.pieces:
            if piece.contains(t):
                return piece.state_vector(t)
        raise DomainError(f"time {t} outside the propagated span [{self.t_start}, {self.t_end}]")

    def positions_at(self, times) -> np.ndarray:
        return np.array([self.state_vector(float(t))[:3] for t in np.atleast_1d(times)])


def propagate(
    state: State,
    t0: float,
    duration: float,
    h: Optional[float] = None,
    switch_ratio: float = SWITCH_RATIO,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    max_pieces: int = 64,
) -> Propagation:
    """
    Integrate for ``duration`` (negative for backward), switching to the
    regularized flow at every double collision on the way.
    """
    h = hamiltonian(state) if h is None else h
    direction = 1 if duration >= 0 else -1
    t_final = t0 + duration
    out = Propagation(t0, t_final, h)
    t = t0
    while len(out.pieces) < max_pieces:
        arc = integrate_physical(state, (t, t_final), rtol, atol, switch_ratio)
        out.pieces.append(arc)
        if arc.stop_reason == "span_end":
            return out
        passage = continue_through_collision(
            arc.final_state, None, arc.t_end, direction, arc.axis, switch_ratio, rtol, atol
        )
        out.pieces.append(passage)
        logger.info(f"Passed collision on axis {passage.axis} at t = {passage.t_collision:.12g}")
        state, t = passage.state_out, passage.t_end
        if direction * (t_final - t) <= 0.0:
            out.t_end = t
            return out
    raise IntegrationError(f"propagation needed more than {max_pieces} pieces")


def regularized_time(times, positions) -> np.ndarray:
    """
    s(t) = ∫ dt/(x y z) from the first sample, cumulative.

    Cells with a vanishing coordinate at one end integrate the
    |t − t_c|^(-2/3) cusp exactly; the others use the trapezoid rule.
    """
    t = np.asarray(times, dtype=float)
    p = np.asarray(positions, dtype=float)
    prod = np.prod(p, axis=1)
    zero = prod <= 0.0
    if np.any(zero[:-1] & zero[1:]):
        raise CollisionError("adjacent samples both at a collision")
    with np.errstate(divide="ignore"):
        f = np.where(zero, np.inf, 1.0 / prod)
    dt = np.diff(t)
    cells = 0.5 * dt * (f[:-1] + f[1:])
    left = zero[:-1]
    right = zero[1:]
    cells[left] = 3.0 * f[1:][left] * dt[left]
    cells[right] = 3.0 * f[:-1][right] * dt[right]
    return np.concatenate([[0.0], np.cumsum(cells)])
