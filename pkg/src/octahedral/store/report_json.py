"""Report JSON: the verification summary plus, after a minimization, optimizer details."""
from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Dict, Optional

from octahedral.action.minimizer import MinimizeReport
from octahedral.verify.report import VerificationReport


def report_payload(
    verification: VerificationReport,
    minimization: Optional[MinimizeReport] = None,
) -> Dict[str, object]:
    payload = verification.to_dict()
    if minimization is not None:
        details = asdict(minimization)
        details.pop("action_history")
        payload["minimizer"] = details
    return payload


def write_report(
    path: Path,
    verification: VerificationReport,
    minimization: Optional[MinimizeReport] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report_payload(verification, minimization), indent=2)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def read_report(path: Path) -> Dict[str, object]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_failure_report(
    path: Path,
    period: float,
    error: Exception,
    terminated_reason: str,
    minimization: Optional[MinimizeReport] = None,
) -> Path:
    """Report for a run that produced no verifiable orbit."""
    payload: Dict[str, object] = {
        "period": period,
        "passed": False,
        "error": f"{type(error).__name__}: {error}",
        "terminated_reason": terminated_reason,
        "checks": {},
    }
    if minimization is not None:
        details = asdict(minimization)
        details.pop("action_history")
        payload["minimizer"] = details
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path
