"""Dihedral symmetry: group elements, fundamental segments, loop reconstruction."""
from .group import (
    ELEMENTS,
    GroupElement,
    apply_group_element,
    compose,
    multiplication_table,
    time_index_map,
)
from .reconstruct import (
    periodic_derivative,
    reconstruct_orbit,
    restrict_to_segment,
    symmetrize,
    symmetry_residual,
)
from .segment import (
    POSITIVITY_FLOOR,
    FundamentalSegment,
    PeriodicOrbit,
    project_constraints,
)

__all__ = [
    "ELEMENTS",
    "GroupElement",
    "apply_group_element",
    "compose",
    "multiplication_table",
    "time_index_map",
    "periodic_derivative",
    "reconstruct_orbit",
    "restrict_to_segment",
    "symmetrize",
    "symmetry_residual",
    "POSITIVITY_FLOOR",
    "FundamentalSegment",
    "PeriodicOrbit",
    "project_constraints",
]
