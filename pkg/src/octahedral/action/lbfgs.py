"""
Bound-constrained limited-memory BFGS through scipy's L-BFGS-B.

Bounds are simple lower bounds x ≥ lower. The run stops on the projected
gradient max-norm only; the relative-reduction test is switched off so a
stall in the line search is reported as such.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import OptimizeResult, minimize

from octahedral.errors import LineSearchError

logger = logging.getLogger("octahedral.action")

MAX_LINE_SEARCH_STEPS = 40
EVALUATIONS_PER_ITERATION = 20


@dataclass
class LbfgsResult:
    x: np.ndarray
    f: float
    g: np.ndarray
    iterations: int
    gradient_inf_norm: float
    reason: str
    history: List[float] = field(default_factory=list)


def projected_gradient(x: np.ndarray, g: np.ndarray, lower: np.ndarray) -> np.ndarray:
    return np.where((x <= lower) & (g > 0.0), 0.0, g)


def minimize_projected(
    fun: Callable[[np.ndarray], Tuple[float, np.ndarray]],
    x0: np.ndarray,
    lower: np.ndarray,
    grad_tol: float,
    max_iters: int,
    memory: int = 10,
) -> LbfgsResult:
    """
    Minimize fun over {x ≥ lower}.

    Args:
        fun: returns (value, gradient).
        x0: starting point, projected before the first evaluation.
        lower: componentwise lower bounds.
        grad_tol: stop when the projected gradient's max-norm drops below this.
        max_iters: iteration budget.
        memory: number of stored curvature pairs.

    Raises:
        LineSearchError: when not even the first step decreases the value.
    """
    x0 = np.maximum(x0, lower)
    f0, _ = fun(x0)
    history = [float(f0)]

    def record(intermediate_result: OptimizeResult):
        history.append(float(intermediate_result.fun))
        if len(history) % 500 == 0:
            logger.debug(f"iter {len(history) - 1}: f = {intermediate_result.fun!r}")

    result = minimize(
        fun,
        x0,
        jac=True,
        method="L-BFGS-B",
        bounds=[(lo, None) for lo in lower],
        callback=record,
        options={
            "maxcor": memory,
            "maxiter": max_iters,
            "maxfun": EVALUATIONS_PER_ITERATION * max(max_iters, 1),
            "maxls": MAX_LINE_SEARCH_STEPS,
            "gtol": grad_tol,
            "ftol": 0.0,
        },
    )

    x = result.x
    f, g = fun(x)
    gnorm = float(np.max(np.abs(projected_gradient(x, g, lower))))
    if gnorm < grad_tol:
        reason = "converged"
    elif result.status == 1:
        reason = "max_iters"
    elif result.nit == 0:
        raise LineSearchError(f"no decrease along the first search direction: {result.message}")
    else:
        logger.warning(
            f"Line search stalled after {result.nit} iterations "
            f"(|g|inf = {gnorm:.3e}): {result.message}"
        )
        reason = "line_search_stalled"
    return LbfgsResult(x, float(f), g, int(result.nit), gnorm, reason, history)
