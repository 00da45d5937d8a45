"""
Homothetic ejection–collision comparison path.

Along the ray X(t) = v(t)·X_c+ with |X_c+| = 1 the problem reduces to the
one-dimensional Kepler problem v̈ = −𝒢/v². The ejection orbit leaving
collision at t = 0 and reaching its apex at T/6 is the cycloid

    v = a (1 − cos η),   t = sqrt(a³/𝒢) (η − sin η),   a³ = 𝒢 (T/(6π))²

and its action over [0, T/6] is α₀/2^{2/3}·(T/6)^{1/3}.
"""
from __future__ import annotations

import numpy as np

from octahedral.central_config.solver import curly_g
from octahedral.errors import DomainError, ShootingError
from octahedral.symmetry.segment import FundamentalSegment

from .quadrature import QuadratureScheme

NEWTON_MAX_STEPS = 60
NEWTON_TOLERANCE = 1e-14
_SERIES_CUTOFF = 0.5


def alpha0(g: float) -> float:
    """Action constant of the collision–ejection Kepler orbit, α₀ = (3/2^{1/3})(πg)^{2/3}."""
    if not g > 0.0:
        raise DomainError(f"coupling must be positive, got {g}")
    return 3.0 / 2.0 ** (1.0 / 3.0) * (np.pi * g) ** (2.0 / 3.0)


def homothetic_bound(period: float, g: float | None = None) -> float:
    """Action of the half ejection orbit on [0, T/6]."""
    if not period > 0.0:
        raise DomainError(f"period must be positive, got {period}")
    g = curly_g() if g is None else g
    return alpha0(g) / 2.0 ** (2.0 / 3.0) * (period / 6.0) ** (1.0 / 3.0)


def split_homothetic_action(period: float, t_bar: float, g: float | None = None) -> float:
    """
    Comparison value for [0, T/6] split at t̄ into two half ejection arcs of
    lengths t̄ and T/6 − t̄; never below homothetic_bound by concavity of t^{1/3}.
    """
    end = period / 6.0
    if not 0.0 <= t_bar <= end:
        raise DomainError(f"split time {t_bar} outside [0, {end}]")
    g = curly_g() if g is None else g
    c = alpha0(g) / 2.0 ** (2.0 / 3.0)
    return c * (t_bar ** (1.0 / 3.0) + (end - t_bar) ** (1.0 / 3.0))


def _eta_minus_sin(eta: np.ndarray) -> np.ndarray:
    e2 = eta * eta
    series = eta * e2 / 6.0 * (
        1.0 - e2 / 20.0 * (1.0 - e2 / 42.0 * (1.0 - e2 / 72.0 * (1.0 - e2 / 110.0 * (1.0 - e2 / 156.0))))
    )
    return np.where(eta < _SERIES_CUTOFF, series, eta - np.sin(eta))


def eccentric_anomaly(mean: np.ndarray) -> np.ndarray:
    """Solve η − sin η = M for M ∈ [0, π] by Newton's method."""
    mean = np.asarray(mean, dtype=float)
    eta = np.cbrt(6.0 * mean)
    for _ in range(NEWTON_MAX_STEPS):
        slope = 2.0 * np.sin(0.5 * eta) ** 2
        active = slope > 0.0
        step = np.zeros_like(eta)
        step[active] = (_eta_minus_sin(eta[active]) - mean[active]) / slope[active]
        eta = np.clip(eta - step, 0.0, 2.0 * np.pi)
        if np.all(np.abs(step) <= NEWTON_TOLERANCE * np.maximum(eta, 1.0)):
            return eta
    raise ShootingError("Kepler ejection equation did not converge")


def homothetic_profile(times, period: float, g: float | None = None) -> np.ndarray:
    """v(t) of the ejection orbit with apex at T/6."""
    g = curly_g() if g is None else g
    a = (g * (period / (6.0 * np.pi)) ** 2) ** (1.0 / 3.0)
    mean = np.asarray(times, dtype=float) / np.sqrt(a**3 / g)
    eta = eccentric_anomaly(np.clip(mean, 0.0, np.pi))
    return 2.0 * a * np.sin(0.5 * eta) ** 2


def homothetic_segment(period: float, n_cells: int, grading: float = 1.5) -> FundamentalSegment:
    """Nodes v(t_i)·(1, 1, 1)/√3 on the graded mesh."""
    q = QuadratureScheme(period, n_cells, grading)
    v = homothetic_profile(q.node_times, period)
    nodes = np.outer(v / np.sqrt(3.0), np.ones(3))
    return FundamentalSegment(period, q.node_times, nodes)
