"""
Verification orchestrator.

Runs every check against an orbit and collects the results; a failing or
erroring check is recorded, never raised.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from octahedral.action.homothetic import homothetic_bound
from octahedral.errors import CollisionError, OctahedralError
from octahedral.regularize.integrate import DEFAULT_ATOL, DEFAULT_RTOL, SWITCH_RATIO
from octahedral.symmetry.segment import PeriodicOrbit

from .checks.action_bound import check_action_bound
from .checks.base import CheckResult
from .checks.coercivity import check_coercivity
from .checks.collisions import check_collision_samples
from .checks.constraints import check_start_constraint, check_third_collision
from .checks.monotonicity import check_acceleration_sign, check_monotonicity
from .checks.reintegration import (
    check_collision_count,
    check_collision_times,
    check_energy_drift,
    check_natural_boundary,
    check_passage_state,
    check_reintegrated_symmetry,
    check_reversal,
)
from .checks.stationarity import check_eom_residual, check_gradient_norm, check_stationarity
from .checks.sundman import check_sundman_collision_time, check_sundman_exponent
from .checks.symmetry import check_symmetry
from .context import OrbitContext
from .thresholds import VerifyThresholds

logger = logging.getLogger("octahedral.verify")

Check = Callable[[OrbitContext, VerifyThresholds], CheckResult]

CHECKS: Dict[str, Check] = {
    "symmetry_residual": check_symmetry,
    "start_constraint": check_start_constraint,
    "third_collision": check_third_collision,
    "collision_samples": check_collision_samples,
    "monotonicity": check_monotonicity,
    "acceleration_sign": check_acceleration_sign,
    "action_bound": check_action_bound,
    "gradient_norm": check_gradient_norm,
    "stationarity": check_stationarity,
    "eom_residual": check_eom_residual,
    "coercivity": check_coercivity,
    "energy_drift": check_energy_drift,
    "reintegrated_symmetry": check_reintegrated_symmetry,
    "reversal_symmetry": check_reversal,
    "passage_state": check_passage_state,
    "natural_boundary": check_natural_boundary,
    "collision_count": check_collision_count,
    "collision_times": check_collision_times,
    "sundman_exponent": check_sundman_exponent,
    "sundman_collision_time": check_sundman_collision_time,
}


@dataclass
class VerificationReport:
    period: float
    action: float
    homothetic_bound: float
    energy: float
    gradient_inf_norm: float
    checks: Dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_dict(self) -> Dict[str, object]:
        return {
            "action": self.action,
            "gradient_inf_norm": self.gradient_inf_norm,
            "energy": self.energy,
            "homothetic_bound": self.homothetic_bound,
            "period": self.period,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
        }


class OrbitVerifier:
    """Runs the verification checks against one orbit."""

    def __init__(
        self,
        thresholds: Optional[VerifyThresholds] = None,
        rtol: float = DEFAULT_RTOL,
        atol: float = DEFAULT_ATOL,
        switch_ratio: float = SWITCH_RATIO,
    ):
        self.thresholds = thresholds or VerifyThresholds()
        self.rtol = rtol
        self.atol = atol
        self.switch_ratio = switch_ratio

    def _run(self, name: str, check: Check, ctx: OrbitContext) -> CheckResult:
        try:
            result = check(ctx, self.thresholds)
        except (OctahedralError, ValueError) as e:
            logger.warning(f"Check {name} could not be evaluated: {e}")
            return CheckResult(name, float("nan"), float("nan"), False)
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, f"{name}: {result.value!r} (threshold {result.threshold!r})")
        return result

    def verify(self, orbit: PeriodicOrbit) -> VerificationReport:
        """
        Args:
            orbit: full-period orbit as produced by reconstruct_orbit or parsed from CSV.

        Returns:
            VerificationReport with one CheckResult per entry of CHECKS.

        Raises:
            CollisionError: a sample has two or more vanishing coordinates.
        """
        vanishing = (orbit.positions <= 0.0).sum(axis=1)
        if vanishing.max(initial=0) >= 2:
            raise CollisionError(
                "orbit contains a quadruple or total collision; not a member of the loop class"
            )
        ctx = OrbitContext(orbit, self.rtol, self.atol, self.switch_ratio)
        checks = {name: self._run(name, check, ctx) for name, check in CHECKS.items()}

        action = checks["action_bound"].value
        gradient = checks["gradient_norm"].value
        return VerificationReport(
            period=orbit.period,
            action=action,
            homothetic_bound=homothetic_bound(orbit.period),
            energy=ctx.energy,
            gradient_inf_norm=gradient,
            checks=checks,
        )


def verify_orbit(
    orbit: PeriodicOrbit,
    thresholds: Optional[VerifyThresholds] = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    switch_ratio: float = SWITCH_RATIO,
) -> VerificationReport:
    return OrbitVerifier(thresholds, rtol, atol, switch_ratio).verify(orbit)
