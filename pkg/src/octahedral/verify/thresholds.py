"""Acceptance thresholds for orbit verification."""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Any, Dict

from octahedral.errors import DomainError


@dataclass(frozen=True)
class VerifyThresholds:
    symmetry: float = 1e-14
    reintegrated_symmetry: float = 1e-6
    reversal: float = 1e-7
    energy_drift: float = 1e-9
    collision_time: float = 1e-6
    collision_separation: float = 1e-6
    sundman_exponent: float = 0.01
    sundman_collision_time: float = 1e-8
    sundman_window: float = 0.01
    monotonicity: float = 1e-10
    constraint: float = 1e-12
    eom_residual: float = 1e-3
    eom_start_fraction: float = 0.1
    gradient: float = 1e-8
    stationarity: float = 1e-8
    stationarity_count: int = 200
    stationarity_size: float = 1e-4
    natural_boundary: float = 1e-6

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "VerifyThresholds":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown verification thresholds: {sorted(unknown)}")
        values = {}
        for f in fields(cls):
            if f.name in data:
                values[f.name] = int(data[f.name]) if f.type in (int, "int") else float(data[f.name])
        return cls(**values)
