"""Command-line front end with machine-readable CSV/JSON output.

Exit status discipline: 0 when every requested check passes, 1 when a
mathematical check fails, 2 on usage errors.  All floating-point values
are printed with 15 significant digits and repeated invocations with the
same flags produce byte-identical output (seeded where randomness is
involved).
"""

from __future__ import annotations

import math
import sys

import click
import numpy as np

from . import bounds, ensembles, protocol, solver
from .errors import QhideError

VERIFY_TOL = 1e-9

SWEEP_CSV_HEADER = "theta,f0,f1,product,hiding_ok,thm1_bound_L"
SOLVE_CSV_HEADER = "theta,L,p_ppt,value,iterations,converged,constraint_residual"


def _fmt(value: float) -> str:
    return "%.15g" % value


def _render_json(value, indent: int = 0) -> str:
    """Deterministic JSON with floats at 15 significant digits."""
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{key}": {_render_json(item, indent + 1)}'
            for key, item in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(
            f"{pad}  {_render_json(item, indent + 1)}" for item in value
        )
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot render {type(value)!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)


def _theta_option(required: bool = True):
    def check(ctx, param, value):
        if value is None:
            return value
        if not 0.0 <= value <= ensembles.THETA_MAX:
            raise click.BadParameter("theta must lie in [0, pi/3]")
        return value

    return click.option(
        "--theta",
        type=float,
        required=required,
        callback=check,
        help="Mixing angle in radians, within [0, pi/3].",
    )


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="json",
    show_default=True,
    help="Output format.",
)
out_option = click.option(
    "--out", type=click.Path(writable=True, dir_okay=False), default=None,
    help="Write output to this path instead of standard output.",
)


@click.group()
def main() -> None:
    """Discrimination bounds and one-bit hiding for two-qubit ensembles."""


@main.command()
@_theta_option()
@format_option
@out_option
def verify(theta: float, fmt: str, out: str | None) -> None:
    """Check every closed-form identity of the two-qubit family at THETA.

    Exits 0 when all residuals are at most 1e-9, otherwise 1 with the
    first failing identity named on standard error.
    """
    residuals = ensembles.closed_form_residuals(theta)
    product = 4.0 * ensembles.f0(theta) * ensembles.f1(theta)
    passed = all(value <= VERIFY_TOL for value in residuals.values())
    payload = {
        "command": "verify",
        "theta": theta,
        "residuals": residuals,
        "max_residual": max(residuals.values()),
        "tolerance": VERIFY_TOL,
        "passed": passed,
        "product_4f0f1": product,
        "hiding_condition": product < 1.0,
    }
    if fmt == "json":
        _emit(_render_json(payload), out)
    else:
        lines = ["check,residual,pass"]
        lines.extend(
            f"{name},{_fmt(value)},{'true' if value <= VERIFY_TOL else 'false'}"
            for name, value in residuals.items()
        )
        lines.append(f"product_4f0f1,{_fmt(product)},{'true' if product < 1 else 'false'}")
        _emit("\n".join(lines), out)
    if not passed:
        failing = next(n for n, v in residuals.items() if v > VERIFY_TOL)
        click.echo(f"verification failed: {failing}", err=True)
        sys.exit(1)


@main.command()
@click.option("--theta-min", type=float, default=0.0, show_default=True)
@click.option("--theta-max", type=float, default=ensembles.THETA_MAX,
              help="Upper end of the sweep (default pi/3).")
@click.option("--points", type=int, default=100, show_default=True)
@click.option("--L", "copies", type=int, default=5, show_default=True,
              help="Copy count for the decay-bound column.")
@format_option
@out_option
def sweep(theta_min: float, theta_max: float, points: int,
          copies: int, fmt: str, out: str | None) -> None:
    """Tabulate f0, f1 and the hiding condition over a theta grid."""
    if not 0.0 <= theta_min <= theta_max <= ensembles.THETA_MAX + 1e-15:
        raise click.BadParameter("need 0 <= theta-min <= theta-max <= pi/3")
    if points < 2:
        raise click.BadParameter("points must be at least 2")
    if copies < 1:
        raise click.BadParameter("L must be at least 1")

    rows = []
    for theta in np.linspace(theta_min, min(theta_max, ensembles.THETA_MAX), points):
        theta = float(theta)
        v0, v1 = ensembles.f0(theta), ensembles.f1(theta)
        product = 4.0 * v0 * v1
        hiding = product < 1.0
        bound = None
        if hiding:
            bound = 0.5 + 0.5 * product ** ((copies - 1) / 4.0)
        rows.append(
            {
                "theta": theta,
                "f0": v0,
                "f1": v1,
                "product": product,
                "hiding_ok": hiding,
                "thm1_bound_L": bound,
            }
        )
    if fmt == "json":
        _emit(_render_json({"command": "sweep", "L": copies, "rows": rows}), out)
    else:
        lines = [SWEEP_CSV_HEADER]
        for row in rows:
            bound = "" if row["thm1_bound_L"] is None else _fmt(row["thm1_bound_L"])
            lines.append(
                f"{_fmt(row['theta'])},{_fmt(row['f0'])},{_fmt(row['f1'])},"
                f"{_fmt(row['product'])},"
                f"{'true' if row['hiding_ok'] else 'false'},{bound}"
            )
        _emit("\n".join(lines), out)


@main.command("bounds")
@_theta_option()
@click.option("--L", "copies", type=int, required=True,
              help="Number of grouped copies.")
@click.option("--k", type=int, default=2, show_default=True,
              help="Certificate block size (2 uses the closed-form certificate).")
@format_option
@out_option
def bounds_command(theta: float, copies: int, k: int, fmt: str, out: str | None) -> None:
    """Report all applicable discrimination bounds at (THETA, L)."""
    if copies < 1:
        raise click.BadParameter("L must be at least 1")
    ensemble = ensembles.two_qubit_separable_ensemble(theta)
    if k == 2:
        certificate = ensembles.two_copy_certificate(theta)
    elif k == 1:
        certificate = 0.5 * ensembles.helstrom_operator(ensemble)
    else:
        raise click.BadParameter("only k = 1 (halved difference) or k = 2 are built in")
    report = bounds.bound_report(ensemble, certificate, k, copies, theta=theta)
    if fmt == "json":
        payload = {"command": "bounds", "k": k}
        payload.update(bounds.report_to_json(report))
        _emit(_render_json(payload), out)
    else:
        _emit(bounds.REPORT_CSV_HEADER + "\n" + bounds.report_csv_row(report), out)


@main.command()
@_theta_option()
@click.option("--L", "copies", type=int, default=1, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="Relative tolerance of the splitting iteration.")
@click.option("--max-iters", type=int, default=20000, show_default=True)
@format_option
@out_option
def solve(theta: float, copies: int, tol: float, max_iters: int,
          fmt: str, out: str | None) -> None:
    """Solve the exact PPT-restricted value at (THETA, L)."""
    if copies < 1:
        raise click.BadParameter("L must be at least 1")
    config = solver.SolverConfig(max_iterations=max_iters, relative_tolerance=tol)
    ensemble = ensembles.two_qubit_separable_ensemble(theta)
    grouped = ensembles.coarse_grain(ensemble, copies)
    result = solver.solve_ppt(grouped, config)
    payload = {
        "command": "solve",
        "theta": theta,
        "L": copies,
        "p_ppt": result.p_ppt,
        "value": result.value,
        "iterations": result.iterations,
        "converged": result.converged,
        "constraint_residual": result.constraint_residual,
        "config": {
            "max_iterations": config.max_iterations,
            "relative_tolerance": config.relative_tolerance,
            "proximal_step": config.proximal_step,
            "over_relaxation": config.over_relaxation,
        },
    }
    if fmt == "json":
        _emit(_render_json(payload), out)
    else:
        row = (
            f"{_fmt(theta)},{copies},{_fmt(result.p_ppt)},{_fmt(result.value)},"
            f"{result.iterations},{'true' if result.converged else 'false'},"
            f"{_fmt(result.constraint_residual)}"
        )
        _emit(SOLVE_CSV_HEADER + "\n" + row, out)
    if not result.converged:
        click.echo("solver hit the iteration cap", err=True)
        sys.exit(1)


def _pick_strategy(name: str, instance: protocol.HidingInstance) -> protocol.Strategy:
    if name == "GlobalOrthogonal":
        return protocol.Strategy.global_orthogonal()
    if name == "blind":
        return protocol.blind_strategy(instance.ensemble.dims)
    if name == "computational":
        return protocol.computational_strategy()
    if name == "best-local":
        return protocol.best_local_strategy(instance)[0]
    if name.startswith("rotated:"):
        try:
            alpha, beta = (float(part) for part in name[len("rotated:"):].split(","))
        except ValueError:
            raise click.BadParameter("rotated strategy needs rotated:ALPHA,BETA")
        return protocol.rotated_projector_strategy(alpha, beta)
    raise click.BadParameter(
        "strategy must be GlobalOrthogonal, blind, computational, "
        "best-local or rotated:ALPHA,BETA"
    )


@main.command()
@_theta_option()
@click.option("--L", "copies", type=int, default=1, show_default=True)
@click.option("--strategy", "strategy_name", type=str, default="GlobalOrthogonal",
              show_default=True,
              help="GlobalOrthogonal | blind | computational | best-local "
                   "| rotated:ALPHA,BETA")
@click.option("--trials", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True,
              help="Worker substreams; results depend on this count.")
@format_option
@out_option
def simulate(theta: float, copies: int, strategy_name: str, trials: int,
             seed: int, workers: int, fmt: str, out: str | None) -> None:
    """Run the seeded hiding protocol and report exact and empirical rates."""
    if copies < 1:
        raise click.BadParameter("L must be at least 1")
    if trials < 1:
        raise click.BadParameter("trials must be at least 1")
    ensemble = ensembles.two_qubit_separable_ensemble(theta)
    instance = protocol.HidingInstance(ensemble=ensemble, copies=copies)
    strategy = _pick_strategy(strategy_name, instance)
    exact = protocol.strategy_success_probability(instance, strategy)
    report = protocol.run_protocol(instance, strategy, trials, seed, workers=workers)
    if fmt == "json":
        payload = {
            "command": "simulate",
            "theta": theta,
            "L": copies,
            "strategy": report.strategy,
            "exact_rate": exact,
            "empirical_rate": report.empirical_rate,
            "trials": report.trials,
            "successes": report.successes,
            "seed": report.seed,
            "workers": report.workers,
        }
        _emit(_render_json(payload), out)
    else:
        row = (
            f"{_fmt(theta)},{copies},{report.strategy},{_fmt(exact)},"
            f"{_fmt(report.empirical_rate)},{report.trials},{report.seed}"
        )
        _emit(protocol.SIM_CSV_HEADER + "\n" + row, out)


def run() -> None:  # pragma: no cover - thin wrapper
    try:
        main()
    except QhideError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    run()
