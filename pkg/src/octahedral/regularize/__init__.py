"""Square-root regularization and integration through double collisions."""
from .flow import reg_rhs, reg_vector_field
from .integrate import (
    Passage,
    PhysicalArc,
    Propagation,
    RegularizedArc,
    below_switch,
    continue_through_collision,
    integrate_physical,
    integrate_reg,
    propagate,
    regularized_time,
)
from .variables import (
    RegularizedState,
    complement_energy,
    from_regularized,
    reg_hamiltonian,
    to_regularized,
)

__all__ = [
    "reg_rhs",
    "reg_vector_field",
    "Passage",
    "PhysicalArc",
    "Propagation",
    "RegularizedArc",
    "below_switch",
    "continue_through_collision",
    "integrate_physical",
    "integrate_reg",
    "propagate",
    "regularized_time",
    "RegularizedState",
    "complement_energy",
    "from_regularized",
    "reg_hamiltonian",
    "to_regularized",
]
