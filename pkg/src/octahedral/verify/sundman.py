"""
Power-law fit of a vanishing coordinate near a double collision.

Near t̄ the coordinate behaves as x₀|t − t̄|^(2/3)(1 + O(|t − t̄|^(2/3))).
The fit is linear least squares of

    ln x = ln x₀ + e ln|t − t̄| + c |t − t̄|^(2/3)

over a window of |t − t̄|, with t̄ optionally refined by bounded Brent search
on the fit residual.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from octahedral.errors import SundmanFitError

logger = logging.getLogger("octahedral.verify")

MIN_POINTS = 4


@dataclass(frozen=True)
class SundmanFit:
    t_bar: float
    x0: float
    exponent: float
    correction: float
    fit_residual: float
    points: int


def _fit(t, x, t_bar, window, correction):
    d = np.abs(t - t_bar)
    keep = (d >= window[0]) & (d <= window[1]) & (x > 0.0)
    if np.count_nonzero(keep) < MIN_POINTS:
        raise SundmanFitError(
            f"only {np.count_nonzero(keep)} samples in window {window}, need {MIN_POINTS}"
        )
    d, y = d[keep], np.log(x[keep])
    columns = [np.ones_like(d), np.log(d)]
    if correction:
        columns.append(d ** (2.0 / 3.0))
    A = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
    return coef, residual, int(d.size)


def sundman_fit(
    times,
    values,
    t_bar: float,
    window: Tuple[float, float],
    refine: bool = True,
    refine_radius: Optional[float] = None,
    correction: bool = True,
) -> SundmanFit:
    """
    Fit the collision power law around t_bar.

    Args:
        times: sample times on either or both sides of the collision.
        values: the vanishing coordinate at those times.
        t_bar: collision time estimate.
        window: (min, max) of |t − t̄| used by the fit.
        refine: search t̄ within refine_radius for a smaller residual.
        refine_radius: defaults to half the window's lower edge.
        correction: include the |t − t̄|^(2/3) correction term.

    Raises:
        SundmanFitError: fewer than four usable samples in the window.
    """
    t = np.asarray(times, dtype=float)
    x = np.asarray(values, dtype=float)
    coef, residual, n = _fit(t, x, t_bar, window, correction)

    if refine:
        radius = 0.5 * window[0] if refine_radius is None else refine_radius

        def objective(tb):
            try:
                return _fit(t, x, tb, window, correction)[1]
            except SundmanFitError:
                return np.inf

        best = minimize_scalar(
            objective,
            bounds=(t_bar - radius, t_bar + radius),
            method="bounded",
            options={"xatol": 1e-6 * radius},
        )
        if best.success and best.fun < residual:
            logger.debug(f"Sundman t_bar refined by {best.x - t_bar:.3e}")
            t_bar = float(best.x)
            coef, residual, n = _fit(t, x, t_bar, window, correction)

    return SundmanFit(
        t_bar=float(t_bar),
        x0=float(np.exp(coef[0])),
        exponent=float(coef[1]),
        correction=float(coef[2]) if correction else 0.0,
        fit_residual=residual,
        points=n,
    )
