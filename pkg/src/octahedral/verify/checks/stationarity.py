"""First-order optimality of the fundamental segment."""
from __future__ import annotations

import numpy as np

from octahedral.action.functional import discrete_eom_residual
from octahedral.action.minimizer import scaled_gradient_norm, stationarity_probe

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult, at_most

PROBE_SEED = 0


def check_gradient_norm(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    return at_most("gradient_norm", scaled_gradient_norm(ctx.segment, ctx.quadrature), th.gradient)


def check_stationarity(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    worst = stationarity_probe(
        ctx.segment,
        ctx.quadrature,
        np.random.default_rng(PROBE_SEED),
        th.stationarity_count,
        th.stationarity_size,
    )
    return at_most("stationarity", worst, th.stationarity)


def check_eom_residual(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    t_min = th.eom_start_fraction * ctx.period / 6.0
    return at_most("eom_residual", discrete_eom_residual(ctx.segment, t_min), th.eom_residual)
