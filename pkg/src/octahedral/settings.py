"""
Run configuration.

Resolution order: packaged ``config/run.yaml`` → user YAML file → command-line
overrides (None means "not given").
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml

from octahedral.errors import DomainError
from octahedral.verify.thresholds import VerifyThresholds

logger = logging.getLogger("octahedral.settings")

DEFAULT_CONFIG_PATH = Path(__file__).parent / "config" / "run.yaml"


@dataclass(frozen=True)
class RunConfig:
    period: float = 6.0
    nodes: int = 1024
    mesh_p: float = 1.5
    grad_tol: float = 1e-8
    max_iters: int = 20000
    mesh_schedule: Tuple[int, ...] = (256, 512, 1024, 2048)
    noise: float = 0.01
    seed: int = 0
    rtol: float = 1e-12
    atol: float = 1e-12
    switch_ratio: float = 1e-3
    out: Path = Path("orbit.csv")
    report: Path = Path("report.json")
    thresholds: VerifyThresholds = field(default_factory=VerifyThresholds)

    def __post_init__(self):
        if not self.period > 0.0:
            raise DomainError(f"period must be positive, got {self.period}")
        if self.nodes < 2:
            raise DomainError(f"nodes must be at least 2, got {self.nodes}")
        if not self.mesh_p >= 1.0:
            raise DomainError(f"mesh_p must be >= 1, got {self.mesh_p}")
        if not self.grad_tol > 0.0:
            raise DomainError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.max_iters < 0:
            raise DomainError(f"max_iters must be non-negative, got {self.max_iters}")
        if self.noise < 0.0:
            raise DomainError(f"noise must be non-negative, got {self.noise}")
        if not (self.rtol > 0.0 and self.atol > 0.0):
            raise DomainError("integrator tolerances must be positive")
        if not 0.0 < self.switch_ratio < 1.0:
            raise DomainError(f"switch_ratio must lie in (0, 1), got {self.switch_ratio}")

    @property
    def samples(self) -> int:
        """Rows of the full-period orbit, 6·N."""
        return 6 * self.nodes


_CASTS = {
    "period": float,
    "nodes": int,
    "mesh_p": float,
    "grad_tol": float,
    "max_iters": int,
    "mesh_schedule": lambda v: tuple(int(n) for n in v),
    "noise": float,
    "seed": int,
    "rtol": float,
    "atol": float,
    "switch_ratio": float,
    "out": Path,
    "report": Path,
}


def _apply(config: RunConfig, data: Mapping[str, Any], source: str) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown configuration keys in {source}: {sorted(unknown)}")
    changes: Dict[str, Any] = {}
    for key, value in data.items():
        if value is None:
            continue
        if key == "thresholds":
            if not isinstance(value, Mapping):
                raise DomainError(f"thresholds in {source} must be a mapping")
            merged = {f.name: getattr(config.thresholds, f.name) for f in fields(VerifyThresholds)}
            merged.update(value)
            changes[key] = VerifyThresholds.from_mapping(merged)
            continue
        try:
            changes[key] = _CASTS[key](value)
        except (TypeError, ValueError) as e:
            raise DomainError(f"bad value for {key} in {source}: {value!r}") from e
    return replace(config, **changes)


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise DomainError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise DomainError(f"cannot parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise DomainError(f"{path} must contain a key: value mapping")
    return data


def load_run_config(
    path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Args:
        path: optional user YAML file.
        overrides: values from command-line flags; None entries are ignored.

    Raises:
        DomainError: unreadable file, unknown key or invalid value.
    """
    config = _apply(RunConfig(), _read_yaml(DEFAULT_CONFIG_PATH), str(DEFAULT_CONFIG_PATH))
    if path is not None:
        config = _apply(config, _read_yaml(Path(path)), str(path))
        logger.debug(f"Loaded configuration from {path}")
    if overrides:
        config = _apply(config, overrides, "command line")
    return config
