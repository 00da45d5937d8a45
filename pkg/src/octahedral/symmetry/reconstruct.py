"""
Rebuild the full loop from a fundamental segment.

The first third [0, T/3] is the segment followed by its mirror under
h∘g², X(t) = (y, x, z)(T/3 − t) on [T/6, T/3]. The other two thirds follow
from X(t + T/3) = (z, x, y)(t).
"""
from __future__ import annotations

import logging

import numpy as np

from octahedral.dynamics.potential import hamiltonian_values
from octahedral.errors import GridError

from .group import ELEMENTS, GRID_TIME_TOLERANCE, apply_group_element
from .segment import FundamentalSegment, PeriodicOrbit

logger = logging.getLogger("octahedral.symmetry")

_MIRROR = [1, 0, 2]
_CYCLE = [2, 0, 1]


def periodic_derivative(times: np.ndarray, values: np.ndarray, period: float) -> np.ndarray:
    """Three-point central difference on a non-uniform periodic grid."""
    t = np.asarray(times, dtype=float)
    f = np.asarray(values, dtype=float)
    h_prev = t - np.roll(t, 1)
    h_prev[0] += period
    h_next = np.roll(t, -1) - t
    h_next[-1] += period
    f_prev = np.roll(f, 1, axis=0)
    f_next = np.roll(f, -1, axis=0)
    if f.ndim > 1:
        h_prev = h_prev[:, None]
        h_next = h_next[:, None]
    return (
        h_prev**2 * f_next
        - h_next**2 * f_prev
        + (h_next**2 - h_prev**2) * f
    ) / (h_prev * h_next * (h_prev + h_next))


def _collision_energy(positions: np.ndarray, velocities: np.ndarray) -> float:
    ok = np.all(positions > 0.0, axis=1) & np.all(np.isfinite(velocities), axis=1)
    if not np.any(ok):
        return float("nan")
    return float(np.median(hamiltonian_values(positions[ok], velocities[ok])))


def reconstruct_orbit(seg: FundamentalSegment) -> PeriodicOrbit:
    """
    Apply the symmetry to a constrained segment.

    Raises:
        ConstraintError: endpoint constraints violated.
        CollisionError: an interior node reaches a face of S.
    """
    seg.validate()
    T = seg.period
    t_seg, X = seg.node_times, seg.nodes
    third_t = np.concatenate([t_seg, T / 3.0 - t_seg[-2:0:-1]])
    third_x = np.concatenate([X, X[-2:0:-1][:, _MIRROR]])

    times = [third_t]
    positions = [third_x]
    for _ in range(2):
        times.append(times[-1] + T / 3.0)
        positions.append(positions[-1][:, _CYCLE])
    times = np.concatenate(times)
    positions = np.concatenate(positions)

    velocities = periodic_derivative(times, positions, T)
    velocities[positions <= 0.0] = np.nan
    energy = _collision_energy(positions, velocities)
    logger.debug(f"Reconstructed {len(times)} samples, h = {energy:.6g}")
    return PeriodicOrbit(T, times, positions, velocities, energy)


def restrict_to_segment(loop: PeriodicOrbit) -> FundamentalSegment:
    """Samples with t ≤ T/6, the inverse of reconstruct_orbit on its own grid."""
    end = loop.period / 6.0
    keep = loop.times <= end + GRID_TIME_TOLERANCE * loop.period
    times = loop.times[keep].copy()
    if times.size < 2:
        raise GridError("orbit has fewer than two samples on [0, T/6]")
    if abs(times[-1] - end) > GRID_TIME_TOLERANCE * loop.period:
        raise GridError("orbit has no sample at T/6")
    times[-1] = end
    return FundamentalSegment(loop.period, times, loop.positions[keep].copy())


def symmetry_residual(loop: PeriodicOrbit) -> float:
    """
    Largest deviation from invariance under the generators g and h, i.e.
    max of |z(t−T/3) − x(t)|, |x(t−T/3) − y(t)|, |y(t−T/3) − z(t)|,
    |x(−t) − x(t)|, |z(−t) − y(t)|, |y(−t) − z(t)| over the samples.
    Infinite when the sample grid is not closed under the group.
    """
    worst = 0.0
    for tag in ("g", "h"):
        try:
            image = apply_group_element(ELEMENTS[tag], loop)
        except GridError as e:
            logger.warning(f"Symmetry residual undefined: {e}")
            return float("inf")
        worst = max(worst, float(np.max(np.abs(image.positions - loop.positions))))
    return worst


def symmetrize(loop: PeriodicOrbit) -> PeriodicOrbit:
    """Average positions over the six group images and rebuild velocities."""
    images = [apply_group_element(el, loop).positions for el in ELEMENTS.values()]
    positions = np.mean(images, axis=0)
    velocities = periodic_derivative(loop.times, positions, loop.period)
    velocities[positions <= 0.0] = np.nan
    return PeriodicOrbit(
        loop.period, loop.times.copy(), positions, velocities,
        _collision_energy(positions, velocities),
    )
