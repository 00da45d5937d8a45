"""
Reduced octahedral six-body dynamics.

Potential, kinetic energy, Lagrangian/Hamiltonian, equations of motion and
the cluster decomposition used near collisions.
"""
from .energy import (
    EnergyBreakdown,
    cluster_energy_rate,
    cluster_potentials,
    energy_breakdown,
    eom_rhs,
    eom_vector_field,
    hamiltonian,
    lagrange_jacobi_xdd,
    lagrange_jacobi_xydd,
)
from .potential import (
    hamiltonian_values,
    kinetic,
    kinetic_values,
    potential,
    potential_gradient,
    potential_gradients,
    potential_values,
)
from .state import ZERO_THRESHOLD, Configuration, State

__all__ = [
    "Configuration",
    "State",
    "ZERO_THRESHOLD",
    "EnergyBreakdown",
    "cluster_energy_rate",
    "cluster_potentials",
    "energy_breakdown",
    "eom_rhs",
    "eom_vector_field",
    "hamiltonian",
    "hamiltonian_values",
    "kinetic",
    "kinetic_values",
    "lagrange_jacobi_xdd",
    "lagrange_jacobi_xydd",
    "potential",
    "potential_gradient",
    "potential_gradients",
    "potential_values",
]
