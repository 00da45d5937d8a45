"""One verification check per module, each returning a CheckResult."""
from .base import CheckResult

__all__ = ["CheckResult"]
