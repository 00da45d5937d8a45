"""Oracles and the orbit verification suite."""
from .checks.base import CheckResult
from .coercivity import (
    CoercivityDiagnostic,
    coercivity_constant,
    coercivity_diagnostic,
    path_length_bound,
)
from .oracles import alpha0, kepler_homothetic_action
from .report import CHECKS, OrbitVerifier, VerificationReport, verify_orbit
from .shooting import SymmetricShot, shoot_symmetric_orbit
from .sundman import SundmanFit, sundman_fit
from .thresholds import VerifyThresholds

__all__ = [
    "CheckResult",
    "CoercivityDiagnostic",
    "coercivity_constant",
    "coercivity_diagnostic",
    "path_length_bound",
    "alpha0",
    "kepler_homothetic_action",
    "CHECKS",
    "OrbitVerifier",
    "VerificationReport",
    "verify_orbit",
    "SymmetricShot",
    "shoot_symmetric_orbit",
    "SundmanFit",
    "sundman_fit",
    "VerifyThresholds",
]
