"""Central configuration solver and the constant 𝒢 = Ũ(X_c+)."""
from .solver import (
    CentralConfigSolution,
    cc_residual,
    cc_solve,
    curly_g,
    scale_invariant_potential,
)

__all__ = [
    "CentralConfigSolution",
    "cc_residual",
    "cc_solve",
    "curly_g",
    "scale_invariant_potential",
]
