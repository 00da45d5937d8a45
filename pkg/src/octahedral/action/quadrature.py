"""Graded meshes and per-cell quadrature rules on [0, T/6]."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from octahedral.errors import DomainError

MIDPOINT = "midpoint"
TRAPEZOID = "trapezoid"


@dataclass(frozen=True)
class QuadratureScheme:
    """
    Mesh t_i = (T/6)·(i/N)^p with an open midpoint rule on the first cell
    and the trapezoid rule elsewhere, so U is never evaluated at t_0.
    """

    period: float
    n_cells: int
    grading: float = 1.5

    def __post_init__(self):
        if not self.period > 0.0:
            raise DomainError(f"period must be positive, got {self.period}")
        if self.n_cells < 1:
            raise DomainError(f"need at least one cell, got {self.n_cells}")
        if not self.grading >= 1.0:
            raise DomainError(f"grading exponent must be >= 1, got {self.grading}")

    @cached_property
    def node_times(self) -> np.ndarray:
        i = np.arange(self.n_cells + 1, dtype=float)
        times = (self.period / 6.0) * (i / self.n_cells) ** self.grading
        times[-1] = self.period / 6.0
        return times

    @property
    def cell_rules(self) -> tuple[str, ...]:
        return (MIDPOINT,) + (TRAPEZOID,) * (self.n_cells - 1)

    def graded_parameter(self, times) -> np.ndarray:
        """ξ = (t/(T/6))^{1/p}, uniform in i/N on this mesh."""
        return (np.asarray(times, dtype=float) / (self.period / 6.0)) ** (1.0 / self.grading)

    def with_cells(self, n_cells: int) -> "QuadratureScheme":
        return QuadratureScheme(self.period, n_cells, self.grading)
