"""
Orbit and report persistence.

Orbits travel as CSV, verification results as JSON.
"""
from .orbit_csv import (
    HEADER,
    format_orbit_csv,
    parse_orbit_csv,
    read_orbit_csv,
    write_orbit_csv,
)
from .report_json import read_report, report_payload, write_failure_report, write_report

__all__ = [
    "HEADER",
    "format_orbit_csv",
    "parse_orbit_csv",
    "read_orbit_csv",
    "write_orbit_csv",
    "read_report",
    "report_payload",
    "write_failure_report",
    "write_report",
]
