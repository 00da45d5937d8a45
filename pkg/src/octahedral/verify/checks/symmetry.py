"""Invariance of the sampled orbit under the two generators."""
from __future__ import annotations

from octahedral.symmetry.reconstruct import symmetry_residual

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult, at_most


def check_symmetry(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    return at_most("symmetry_residual", symmetry_residual(ctx.orbit), th.symmetry)
