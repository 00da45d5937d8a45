"""Result type shared by all verification checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool

    def to_dict(self) -> Dict[str, object]:
        return {"value": self.value, "threshold": self.threshold, "pass": self.passed}


def at_most(name: str, value: float, threshold: float) -> CheckResult:
    return CheckResult(name, float(value), float(threshold), bool(value <= threshold))
