"""
Shared, lazily computed inputs of the verification checks.

The re-integration starts at the sample nearest T/12. Its state comes from
symmetric shooting when that converges, otherwise from the samples
themselves with a local polynomial velocity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from octahedral.action.quadrature import QuadratureScheme
from octahedral.dynamics.state import State
from octahedral.errors import IntegrationError, OctahedralError
from octahedral.regularize.integrate import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    SWITCH_RATIO,
    Passage,
    Propagation,
    propagate,
)
from octahedral.symmetry.reconstruct import restrict_to_segment
from octahedral.symmetry.segment import FundamentalSegment, PeriodicOrbit

from .shooting import SymmetricShot, shoot_symmetric_orbit
from .sundman import SundmanFit, sundman_fit

logger = logging.getLogger("octahedral.verify")

STENCIL = 9
SUNDMAN_POINTS = 40
# Collision-time fits, as fractions of T: sample span around kT/3, t̄ search radius.
COLLISION_SAMPLES = (4e-6, 2e-4)
COLLISION_SEARCH = 1e-6


@dataclass
class OrbitContext:
    orbit: PeriodicOrbit
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    switch_ratio: float = SWITCH_RATIO
    _fits: Dict[float, List[Tuple[Passage, SundmanFit]]] = field(
        default_factory=dict, init=False, repr=False
    )
    _time_fits: Optional[List[Tuple[Passage, SundmanFit]]] = field(
        default=None, init=False, repr=False
    )

    @property
    def period(self) -> float:
        return self.orbit.period

    @cached_property
    def segment(self) -> FundamentalSegment:
        return restrict_to_segment(self.orbit)

    @cached_property
    def quadrature(self) -> QuadratureScheme:
        return QuadratureScheme(self.period, self.segment.n_cells)

    @cached_property
    def shot(self) -> Optional[SymmetricShot]:
        try:
            shot = shoot_symmetric_orbit(self.orbit, self.rtol, self.atol)
        except OctahedralError as e:
            logger.warning(f"Symmetric shooting failed, re-integrating from samples: {e}")
            return None
        logger.info(f"Symmetric shooting converged after {shot.iterations} evaluations, h = {shot.h!r}")
        return shot

    @property
    def energy(self) -> float:
        return self.shot.h if self.shot is not None else self.orbit.energy

    def _sample_state(self, i: int) -> State:
        t = self.orbit.times
        lo = max(0, min(i - STENCIL // 2, len(t) - STENCIL))
        window = slice(lo, lo + STENCIL)
        coeffs = np.polyfit(t[window] - t[i], self.orbit.positions[window], 4)
        return State.from_array(np.concatenate([self.orbit.positions[i], coeffs[-2]]))

    @cached_property
    def start(self) -> Tuple[float, State]:
        i = int(np.argmin(np.abs(self.orbit.times - self.period / 12.0)))
        t_s = float(self.orbit.times[i])
        if self.shot is not None:
            return t_s, self.shot.state_at(t_s)
        return t_s, self._sample_state(i)

    @cached_property
    def forward(self) -> Propagation:
        t_s, state = self.start
        return propagate(
            state, t_s, 4.0 * self.period / 3.0 + self.period / 96.0, None,
            self.switch_ratio, self.rtol, self.atol,
        )

    @cached_property
    def backward(self) -> Propagation:
        t_s, state = self.start
        return propagate(
            state, t_s, -(t_s + 7.0 * self.period / 24.0), None,
            self.switch_ratio, self.rtol, self.atol,
        )

    def state_vector(self, t: float) -> np.ndarray:
        t_s, _ = self.start
        return (self.forward if t >= t_s else self.backward).state_vector(float(t))

    def positions_at(self, times) -> np.ndarray:
        return np.array([self.state_vector(t)[:3] for t in np.atleast_1d(times)])

    def sundman_fits(self, window_fraction: float) -> List[Tuple[Passage, SundmanFit]]:
        """Fits at the collisions near 0, T/3 and 2T/3, each paired with its passage."""
        if window_fraction in self._fits:
            return self._fits[window_fraction]
        T = self.period
        window = (10.0 * self.atol, window_fraction * T)
        d = np.geomspace(window[0], window[1], SUNDMAN_POINTS)
        fits = []
        for target in (0.0, T / 3.0, 2.0 * T / 3.0):
            passage = self._passage_near(target)
            t_c = passage.t_collision
            times = np.concatenate([t_c - d[::-1], t_c + d])
            values = self.positions_at(times)[:, passage.axis]
            fit = sundman_fit(times, values, t_c, window, refine_radius=1e-9 * T)
            fits.append((passage, fit))
        self._fits[window_fraction] = fits
        return fits

    def _passage_near(self, target: float) -> Passage:
        passages = self.backward.passages + self.forward.passages
        passage = min(passages, key=lambda p: abs(p.t_collision - target), default=None)
        if passage is None or abs(passage.t_collision - target) > self.period / 6.0:
            raise IntegrationError(f"no collision passage found near t = {target}")
        return passage

    def collision_time_fits(self) -> List[Tuple[Passage, SundmanFit]]:
        """
        Fits sampled around the symmetry-predicted times 0, T/3 and 2T/3, with
        t̄ free within COLLISION_SEARCH·T, paired with the passage nearest each.
        """
        if self._time_fits is not None:
            return self._time_fits
        T = self.period
        radius = COLLISION_SEARCH * T
        d = np.geomspace(COLLISION_SAMPLES[0] * T, COLLISION_SAMPLES[1] * T, SUNDMAN_POINTS)
        window = (COLLISION_SAMPLES[0] * T - 2.0 * radius, COLLISION_SAMPLES[1] * T + 2.0 * radius)
        fits = []
        for target in (0.0, T / 3.0, 2.0 * T / 3.0):
            passage = self._passage_near(target)
            times = np.concatenate([target - d[::-1], target + d])
            values = self.positions_at(times)[:, passage.axis]
            fits.append((passage, sundman_fit(times, values, target, window, refine_radius=radius)))
        self._time_fits = fits
        return fits
