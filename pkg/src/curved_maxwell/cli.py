"""Command-line entry point: verification suites, spectrum tables and mode grids.

    curved-maxwell verify all
    curved-maxwell verify radial --model s3 --j 1 --n 0
    curved-maxwell spectrum --jmax 2 --nmax 1 --format json
    curved-maxwell mode --model s3 --j 2 --m 1 --n 0 --nchi 8 -o grid.csv
    curved-maxwell flatcheck
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import click
import numpy as np

from . import flat_check, modes, suites
from .errors import AssemblyError, CoordinateError, QuantizationError
from .geometry import SpaceModel
from .matrix_core import Basis, FieldVector

NO_SPECTRUM_MESSAGE = "no discrete spectrum for frequencies of electromagnetic modes arises"
FLOAT_FORMAT = "%.17g"

MODE_COLUMNS = (
    "t", "chi", "theta", "phi",
    "re_psi1", "re_psi2", "re_psi3",
    "im_psi1", "im_psi2", "im_psi3",
    "E1", "E2", "E3",
    "cB1", "cB2", "cB3",
    "residual",
)
SPECTRUM_COLUMNS = ("j", "n", "omega", "degeneracy")


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str = "s3"
    j: int | None = None
    m: int = 0
    n: int | None = None
    omega: float | None = None
    rho: float = 1.0
    grid: tuple[int, int, int] = (20, 20, 20)
    output: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.command not in ("verify", "spectrum", "mode", "flatcheck"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.model not in ("s3", "h3"):
            raise ValueError(f"model must be s3 or h3, got {self.model!r}")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        if any(g < 1 for g in self.grid):
            raise ValueError("grid sizes must be positive")
        if self.command == "mode" and self.j is None:
            raise ValueError("mode needs --j")

    def space(self) -> SpaceModel:
        return SpaceModel.s3(self.rho) if self.model == "s3" else SpaceModel.h3(self.rho)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return FLOAT_FORMAT % float(v)


def render(rows: list[dict], columns, fmt: str) -> str:
    """CSV (header row, 17 significant digits) or a JSON array of row objects."""
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _override(checks, tol):
    if tol is None:
        return checks
    return [c if c.at_least else replace(c, tolerance=tol) for c in checks]


def report(checks, seconds: float, out=None) -> bool:
    out = out or sys.stdout
    for c in checks:
        print(c.line(), file=out)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed in {seconds:.1f} s", file=out)
    return failed == 0


# -- mode grids ---------------------------------------------------------------


def mode_rows(spec: modes.ModeSpec, grid: modes.ModeGrid, threads: int | None = None) -> list[dict]:
    """One row per grid point (t, chi, theta, phi order) with fields and residual.

    psi columns are the cyclic-basis components produced by the mode ansatz;
    E and cB are Cartesian-frame fields; residual is the pointwise curved
    operator residual relative to max |Psi| over the grid.
    """
    threads = threads or modes.thread_count()
    chunks = [c for c in np.array_split(grid.chi, min(threads, grid.chi.size)) if c.size]

    def work(chi):
        return modes.operator_analytic(spec, replace(grid, chi=chi))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(work, chunks))
    res = np.concatenate([p[0] for p in parts], axis=1)
    psi = np.concatenate([p[1] for p in parts], axis=1)
    scale = float(np.max(np.abs(psi))) or 1.0
    resid = np.max(np.abs(res), axis=-1) / scale
    E, cB = modes.to_physical_fields(FieldVector(psi, Basis.CYCLIC))
    t, chi, theta, phi = np.broadcast_arrays(*grid.mesh())
    rows = []
    for idx in np.ndindex(t.shape):
        p = psi[idx]
        row = {"t": float(t[idx]), "chi": float(chi[idx]), "theta": float(theta[idx]), "phi": float(phi[idx])}
        for k in range(3):
            row[f"re_psi{k + 1}"] = float(p[k + 1].real)
        for k in range(3):
            row[f"im_psi{k + 1}"] = float(p[k + 1].imag)
        for k in range(3):
            row[f"E{k + 1}"] = float(E[idx][k])
        for k in range(3):
            row[f"cB{k + 1}"] = float(cB[idx][k])
        row["residual"] = float(resid[idx])
        rows.append(row)
    return rows


# -- click commands -----------------------------------------------------------

_model_opt = click.option("--model", type=click.Choice(["s3", "h3"]), default="s3", show_default=True)
_format_opt = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
_output_opt = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                           help="Write to a file instead of stdout.")


@click.group()
def main():
    """Maxwell modes on S3 and H3 in the complex matrix formulation."""


@main.command()
@click.argument("scope", type=click.Choice(list(suites.SCOPES) + ["all"]))
@_model_opt
@click.option("--j", type=int, default=None)
@click.option("--m", type=int, default=0, help="Accepted for symmetry with mode; radial checks are m-free.")
@click.option("--n", type=int, default=None)
@click.option("--omega", type=float, default=None)
@click.option("--tol", type=float, default=None, help="Override every residual tolerance.")
def verify(scope, model, j, m, n, omega, tol):
    """Run a verification suite; exit 1 if any check fails."""
    cfg = RunConfig("verify", model=model, j=j, m=m, n=n, omega=omega)
    kwargs = {}
    if scope == "radial" and j is not None:
        kwargs = {"model": cfg.space(), "j": j, "n": n, "omega": omega}
    try:
        checks, seconds = suites.run(scope, **kwargs)
    except (ValueError, QuantizationError) as exc:
        raise click.UsageError(str(exc)) from exc
    ok = report(_override(checks, tol), seconds)
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--jmax", type=int, default=4, show_default=True)
@click.option("--nmax", type=int, default=3, show_default=True)
@click.option("--rho", type=float, default=1.0, show_default=True)
@_model_opt
@_format_opt
@_output_opt
def spectrum(jmax, nmax, rho, model, fmt, output):
    """Discrete S3 frequencies omega = (n + 1 + j) / rho with degeneracies."""
    cfg = RunConfig("spectrum", model=model, rho=rho, output=output, fmt=fmt)
    if cfg.model == "h3":
        click.echo(NO_SPECTRUM_MESSAGE, err=True)
        emit(render([], SPECTRUM_COLUMNS, fmt), output)
        return
    if jmax < 1 or nmax < 0:
        raise click.UsageError("need jmax >= 1 and nmax >= 0")
    table = modes.spectrum(jmax, nmax, rho)
    emit(render(table.records(), SPECTRUM_COLUMNS, fmt), output)


@main.command()
@_model_opt
@click.option("--j", type=int, required=True)
@click.option("--m", type=int, default=0, show_default=True)
@click.option("--n", type=int, default=None, help="Radial quantum number (S3).")
@click.option("--omega", type=float, default=None, help="Frequency (required for H3).")
@click.option("--rho", type=float, default=1.0, show_default=True)
@click.option("--detuning", type=float, default=0.0, show_default=True)
@click.option("--t", "t", type=float, default=0.3, show_default=True)
@click.option("--nchi", type=int, default=20, show_default=True)
@click.option("--ntheta", type=int, default=20, show_default=True)
@click.option("--nphi", type=int, default=20, show_default=True)
@click.option("--residual-tol", type=float, default=1e-6, show_default=True)
@click.option("--threads", type=int, default=None, help="Defaults to CURVED_MAXWELL_THREADS or the CPU count.")
@_format_opt
@_output_opt
def mode(model, j, m, n, omega, rho, detuning, t, nchi, ntheta, nphi, residual_tol, threads, fmt, output):
    """Sample one mode on a (t, chi, theta, phi) grid."""
    try:
        cfg = RunConfig("mode", model=model, j=j, m=m, n=n, omega=omega, rho=rho,
                        grid=(nchi, ntheta, nphi), output=output, fmt=fmt)
        spec = modes.ModeSpec(cfg.space(), j, m, n=n, omega=omega, detuning=detuning)
        grid = modes.ModeGrid.default(spec.model, nchi, ntheta, nphi, t=t)
        rows = mode_rows(spec, grid, threads)
    except (ValueError, QuantizationError, CoordinateError, AssemblyError) as exc:
        raise click.UsageError(str(exc)) from exc
    emit(render(rows, MODE_COLUMNS, fmt), output)
    worst = max(r["residual"] for r in rows)
    if worst > residual_tol:
        click.echo(f"max residual {worst:.3e} exceeds {residual_tol:.0e}", err=True)
        sys.exit(1)


@main.command()
@click.option("--family", type=click.Choice(sorted(flat_check.FAMILIES) + ["all"]), default="all", show_default=True)
@click.option("--points", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=3, show_default=True)
@click.option("--method", type=click.Choice(["analytic", "fd"]), default="analytic", show_default=True)
@click.option("--tol", type=float, default=None, help="Defaults to 1e-13 (analytic) or 1e-8 (fd).")
@_format_opt
@_output_opt
def flatcheck(family, points, seed, method, tol, fmt, output):
    """Compare regrouped matrix residuals with the eight classical ones."""
    tol = tol if tol is not None else (1e-13 if method == "analytic" else 1e-8)
    names = sorted(flat_check.FAMILIES) if family == "all" else [family]
    rng = np.random.default_rng(seed)
    rows = []
    for name in names:
        field = flat_check.FAMILIES[name]()
        for k in range(points):
            x = rng.uniform(-1.0, 1.0, 4)
            x[1:] += np.sign(x[1:]) * 0.3  # keep clear of the point-charge origin
            diff = flat_check.equivalence_residual(field, x, method)
            classical = float(np.max(np.abs(flat_check.classical_residual(field, x, method))))
            rows.append({"family": name, "point": k, "equivalence": diff, "classical": classical})
    emit(render(rows, ("family", "point", "equivalence", "classical"), fmt), output)
    worst = max(r["equivalence"] for r in rows)
    click.echo(f"{len(rows)} points, worst equivalence residual {worst:.3e} (need <= {tol:.0e})", err=True)
    sys.exit(0 if worst <= tol else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
