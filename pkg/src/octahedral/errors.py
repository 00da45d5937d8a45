"""Exception hierarchy shared by every octahedral sub-package."""
from __future__ import annotations


class OctahedralError(Exception):
    """Base class for all errors raised by the library."""


class DomainError(OctahedralError, ValueError):
    """Input outside the admissible domain (negative coordinate, bad config value)."""


class SingularityError(OctahedralError):
    """Evaluation requested exactly at a collision where the quantity is singular."""


class CollisionError(OctahedralError):
    """A collision occurred where the loop class or the integrator forbids one."""


class ConstraintError(OctahedralError):
    """A fundamental segment violates its endpoint constraints."""


class GridError(OctahedralError):
    """Sample grid of an orbit is not closed under the group action."""


class ShootingError(OctahedralError):
    """Boundary-value shooting for a homothetic or Kepler path did not converge."""


class CentralConfigError(OctahedralError):
    """Newton iteration for the central configuration failed."""


class LineSearchError(OctahedralError):
    """Backtracking line search could not produce an acceptable step."""


class IntegrationError(OctahedralError):
    """Adaptive integrator failed (step-size underflow or solver error)."""


class SundmanFitError(OctahedralError):
    """Not enough samples in the Sundman fit window."""


class OrbitParseError(OctahedralError):
    """Malformed orbit CSV; ``line`` is the 1-based line number of the first bad line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
