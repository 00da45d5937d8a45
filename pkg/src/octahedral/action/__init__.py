"""Discretized action, homothetic comparison path and the minimizer."""
from .functional import (
    action_gradient,
    discrete_eom_residual,
    discretized_action,
    full_gradient,
)
from .homothetic import (
    alpha0,
    homothetic_bound,
    homothetic_profile,
    homothetic_segment,
    split_homothetic_action,
)
from .minimizer import (
    MinimizeOptions,
    MinimizeReport,
    MultistartResult,
    minimize,
    multistart,
    perturb_segment,
    refine_segment,
    scaled_gradient_norm,
    seeded_segment,
    stationarity_probe,
)
from .quadrature import QuadratureScheme

__all__ = [
    "QuadratureScheme",
    "action_gradient",
    "alpha0",
    "discrete_eom_residual",
    "discretized_action",
    "full_gradient",
    "homothetic_bound",
    "homothetic_profile",
    "homothetic_segment",
    "split_homothetic_action",
    "MinimizeOptions",
    "MinimizeReport",
    "MultistartResult",
    "minimize",
    "multistart",
    "perturb_segment",
    "refine_segment",
    "scaled_gradient_norm",
    "seeded_segment",
    "stationarity_probe",
]
