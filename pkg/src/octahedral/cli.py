from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import List, Optional

import numpy as np
import typer
from dotenv import load_dotenv
from rich import print
from rich.logging import RichHandler
from rich.table import Table

from octahedral.action import (
    MinimizeOptions,
    homothetic_bound,
    minimize,
    multistart as run_multistart,
    seeded_segment,
)
from octahedral.central_config import cc_solve, curly_g
from octahedral.dynamics import Configuration
from octahedral.errors import (
    CollisionError,
    DomainError,
    LineSearchError,
    OctahedralError,
    OrbitParseError,
)
from octahedral.settings import RunConfig, load_run_config
from octahedral.store import read_orbit_csv, write_failure_report, write_orbit_csv, write_report
from octahedral.symmetry import reconstruct_orbit
from octahedral.verify import VerificationReport, alpha0, kepler_homothetic_action, verify_orbit

# Load environment variables from .env file
load_dotenv()

app = typer.Typer(help="Octahedral six-body periodic orbit CLI")
oracle_app = typer.Typer(help="Closed-form and brute-force homothetic oracles")
app.add_typer(oracle_app, name="oracle")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger("octahedral.cli")


def _fmt(v: float) -> str:
    return f"{v:.15g}"


def _setup_logging(level: Optional[str]) -> None:
    level = (level or os.getenv("OCTAHEDRAL_LOG_LEVEL") or "WARNING").upper()
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
        force=True,
    )


def _config(config: Optional[Path], **overrides) -> RunConfig:
    try:
        return load_run_config(config, overrides)
    except DomainError as e:
        print(f"[red]Invalid configuration:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)


def _print_report(report: VerificationReport) -> None:
    table = Table(title="Orbit verification")

    table.add_column("Check")
    table.add_column("Value", justify="right")
    table.add_column("Threshold", justify="right")
    table.add_column("Result")

    for name, check in report.checks.items():
        table.add_row(
            name,
            f"{check.value:.6g}",
            f"{check.threshold:.6g}",
            "[green]pass[/green]" if check.passed else "[red]FAIL[/red]",
        )

    print(table)
    print(
        f"[cyan]action[/cyan] {_fmt(report.action)}  "
        f"[cyan]bound[/cyan] {_fmt(report.homothetic_bound)}  "
        f"[cyan]energy[/cyan] {_fmt(report.energy)}"
    )


def _verify_and_exit(orbit, cfg: RunConfig, report_path: Path, minimization=None) -> None:
    try:
        report = verify_orbit(orbit, cfg.thresholds, cfg.rtol, cfg.atol, cfg.switch_ratio)
    except CollisionError as e:
        write_failure_report(report_path, orbit.period, e, "orbit_rejected", minimization)
        print(f"[red]Orbit rejected:[/red] {e}")
        print(f"[dim]Report: {report_path}[/dim]")
        raise typer.Exit(EXIT_FAILED)

    write_report(report_path, report, minimization)
    _print_report(report)
    print(f"[dim]Report: {report_path}[/dim]")

    if not report.passed:
        print(f"[red]Verification failed:[/red] {', '.join(report.failures)}")
        raise typer.Exit(EXIT_FAILED)
    print("[green]All checks passed[/green]")


# =========================
# MINIMIZE
# =========================

@app.command("minimize")
def cmd_minimize(
    period: Optional[float] = typer.Option(None, "--period", help="Orbit period T"),
    nodes: Optional[int] = typer.Option(None, "--nodes", help="Cells N on [0, T/6]"),
    mesh_p: Optional[float] = typer.Option(None, "--mesh-p", help="Mesh grading exponent p"),
    grad_tol: Optional[float] = typer.Option(None, "--grad-tol", help="Scaled gradient tolerance"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the start perturbation"),
    out: Optional[Path] = typer.Option(None, "--out", help="Orbit CSV path"),
    report: Optional[Path] = typer.Option(None, "--report", help="Report JSON path"),
    config: Optional[Path] = typer.Option(None, "--config", help="YAML run configuration"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Minimize the action, rebuild the full orbit, write it and verify it."""
    _setup_logging(log_level)
    cfg = _config(
        config, period=period, nodes=nodes, mesh_p=mesh_p, grad_tol=grad_tol,
        seed=seed, out=out, report=report,
    )

    print(f"[cyan]Minimizing[/cyan] T={_fmt(cfg.period)} N={cfg.nodes} p={_fmt(cfg.mesh_p)} seed={cfg.seed}")
    try:
        start = seeded_segment(cfg.period, cfg.nodes, cfg.mesh_p, cfg.seed, cfg.noise)
        options = MinimizeOptions(
            max_iters=cfg.max_iters, grad_tol=cfg.grad_tol, mesh_schedule=cfg.mesh_schedule
        )
        segment, summary = minimize(start, options, cfg.mesh_p)
        orbit = reconstruct_orbit(segment)
    except OctahedralError as e:
        reason = "line_search_failed" if isinstance(e, LineSearchError) else "error"
        write_failure_report(cfg.report, cfg.period, e, reason)
        print(f"[red]Minimization failed:[/red] {e}")
        print(f"[dim]Report: {cfg.report}[/dim]")
        raise typer.Exit(EXIT_FAILED)

    print(
        f"[green]Minimized[/green] action={_fmt(summary.action)} "
        f"|g|={summary.gradient_inf_norm:.3e} iterations={summary.iterations} "
        f"({summary.terminated_reason})"
    )
    write_orbit_csv(orbit, cfg.out)
    print(f"[dim]Orbit: {cfg.out}[/dim]")
    _verify_and_exit(orbit, cfg, cfg.report, summary)


# =========================
# VERIFY
# =========================

@app.command("verify")
def cmd_verify(
    orbit_path: Path = typer.Argument(..., help="Orbit CSV to verify"),
    period: Optional[float] = typer.Option(None, "--period", help="Period, inferred from the CSV if omitted"),
    report: Optional[Path] = typer.Option(None, "--report", help="Report JSON path"),
    config: Optional[Path] = typer.Option(None, "--config", help="YAML run configuration"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Verify an orbit CSV and write the report."""
    _setup_logging(log_level)
    cfg = _config(config, report=report)

    if not orbit_path.exists():
        print(f"[red]Orbit file not found:[/red] {orbit_path}")
        raise typer.Exit(EXIT_USAGE)
    try:
        orbit = read_orbit_csv(orbit_path, period)
    except OrbitParseError as e:
        print(f"[red]Cannot parse {orbit_path}:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)

    print(f"[cyan]Verifying[/cyan] {orbit_path} ({len(orbit)} samples, T={_fmt(orbit.period)})")
    _verify_and_exit(orbit, cfg, cfg.report)


# =========================
# MULTISTART
# =========================

@app.command("multistart")
def cmd_multistart(
    seeds: List[int] = typer.Option([0, 1], "--seed", help="Seeds to run (repeat the flag)"),
    period: Optional[float] = typer.Option(None, "--period", help="Orbit period T"),
    nodes: Optional[int] = typer.Option(None, "--nodes", help="Cells N on [0, T/6]"),
    mesh_p: Optional[float] = typer.Option(None, "--mesh-p", help="Mesh grading exponent p"),
    grad_tol: Optional[float] = typer.Option(None, "--grad-tol", help="Scaled gradient tolerance"),
    config: Optional[Path] = typer.Option(None, "--config", help="YAML run configuration"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Minimize from several perturbed seeds and compare the final actions."""
    _setup_logging(log_level)
    cfg = _config(config, period=period, nodes=nodes, mesh_p=mesh_p, grad_tol=grad_tol)
    options = MinimizeOptions(
        max_iters=cfg.max_iters, grad_tol=cfg.grad_tol, mesh_schedule=cfg.mesh_schedule
    )
    try:
        result = run_multistart(seeds, cfg.period, cfg.nodes, cfg.mesh_p, options, cfg.noise)
    except OctahedralError as e:
        print(f"[red]Multistart failed:[/red] {e}")
        raise typer.Exit(EXIT_FAILED)

    table = Table(title="Multistart")

    table.add_column("Seed", justify="right")
    table.add_column("Action", justify="right")
    table.add_column("|g|", justify="right")
    table.add_column("Iterations", justify="right")
    table.add_column("Stop")

    for seed, (_, summary) in zip(result.seeds, result.runs):
        table.add_row(
            str(seed),
            _fmt(summary.action),
            f"{summary.gradient_inf_norm:.3e}",
            str(summary.iterations),
            summary.terminated_reason,
        )

    print(table)
    colour = "green" if result.relative_spread <= 1e-6 else "yellow"
    print(f"[{colour}]relative spread[/{colour}] {result.relative_spread:.3e}")
    print(f"[cyan]homothetic bound[/cyan] {_fmt(homothetic_bound(cfg.period))}")


# =========================
# CENTRAL CONFIGURATION
# =========================

@app.command("cc")
def cmd_cc(
    start: List[float] = typer.Option([0.4, 0.7, 0.6], "--start", help="Start x y z (repeat three times)"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Solve for the central configuration from an interior start."""
    _setup_logging(log_level)
    if len(start) != 3:
        print("[red]--start needs exactly three values[/red]")
        raise typer.Exit(EXIT_USAGE)
    try:
        solution = cc_solve(Configuration(*start))
    except DomainError as e:
        print(f"[red]Invalid start:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except OctahedralError as e:
        print(f"[red]Central configuration search failed:[/red] {e}")
        raise typer.Exit(EXIT_FAILED)

    x, y, z = solution.config.as_tuple()
    print(f"X = ({_fmt(x)}, {_fmt(y)}, {_fmt(z)})")
    print(f"lambda = {_fmt(solution.lam)}")
    print(f"[dim]residual {solution.residual_norm:.3e} after {solution.iterations} iterations[/dim]")


# =========================
# ORACLES
# =========================

@oracle_app.command("alpha0")
def oracle_alpha0(
    g: Optional[float] = typer.Option(None, "--g", help="Coupling, defaults to the octahedral constant"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Print α₀(g)."""
    _setup_logging(log_level)
    g = curly_g() if g is None else g
    print(_fmt(alpha0(g)))


@oracle_app.command("kepler")
def oracle_kepler(
    g: Optional[float] = typer.Option(None, "--g", help="Coupling, defaults to the octahedral constant"),
    tau: float = typer.Option(1.0, "--tau", help="Period of the collision-ejection orbit"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Print the integrated homothetic action and the closed form α₀τ^(1/3)."""
    _setup_logging(log_level)
    g = curly_g() if g is None else g
    try:
        brute = kepler_homothetic_action(g, tau)
    except OctahedralError as e:
        print(f"[red]Kepler oracle failed:[/red] {e}")
        raise typer.Exit(EXIT_USAGE if isinstance(e, DomainError) else EXIT_FAILED)
    print(_fmt(brute))
    print(_fmt(alpha0(g) * np.cbrt(tau)))


@oracle_app.command("bound")
def oracle_bound(
    period: float = typer.Option(6.0, "--T", "--period", help="Orbit period T"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
):
    """Print the homothetic action bound α₀/2^(2/3)·(T/6)^(1/3)."""
    _setup_logging(log_level)
    try:
        print(_fmt(homothetic_bound(period)))
    except DomainError as e:
        print(f"[red]{e}[/red]")
        raise typer.Exit(EXIT_USAGE)


if __name__ == "__main__":
    app()
