import csv
import functools
import io
import json
import logging
import math
from collections.abc import Iterable, Sequence
from enum import Enum
from pathlib import Path
from typing import Annotated, Any

import click
import numpy as np
import typer
from typer.core import TyperGroup

from . import asymptotics, exact, fredholm, harness, kernels, tableaux
from .config import THREADS_ENV, ExperimentConfig, read_config_file
from .errors import ParameterError, WorkbenchError, error_payload
from .fields import DEFAULT_TV_TOL, ModelParams, RandomSeed, sample_geom_field

try:  # newer Typer vendors its own copy of Click and raises that copy's exceptions
    from typer._click.exceptions import UsageError as _TyperUsageError
except ImportError:
    _TyperUsageError = click.UsageError
_USAGE_ERRORS = (click.UsageError, _TyperUsageError)


class WorkbenchGroup(TyperGroup):
    """Click usage errors, such as an unknown option or a bad choice, exit with the ParameterError code."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent, **extra)
        except _USAGE_ERRORS as exc:
            exc.exit_code = ParameterError.exit_code
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except _USAGE_ERRORS as exc:
            exc.exit_code = ParameterError.exit_code
            raise


app = typer.Typer(
    cls=WorkbenchGroup,
    help="Sampling, exact checks, kernels and Fredholm determinants for Muttalib-Borodin plane partitions.",
)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Model(str, Enum):
    GEO = "geo"
    POW = "pow"


class KernelName(str, Enum):
    KD = "kd"
    KHE = "khe"
    KHE_TILDE = "khe-tilde"
    BESSEL = "bessel"
    KC = "kc"
    AIRY = "airy"


def _number(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return value


def _emit(header: Sequence[str], rows: Iterable[Sequence[Any]], fmt: OutputFormat, out: Path | None) -> None:
    """Write rows as CSV with a header, or as a JSON list of records, to a file or stdout."""
    rows = [list(row) for row in rows]
    if fmt is OutputFormat.JSON:
        text = json.dumps([dict(zip(header, row, strict=True)) for row in rows], indent=2) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_number(v) for v in row] for row in rows)
        text = buffer.getvalue()
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text)


def _guarded(command):
    """Translate workbench errors into exit codes with a JSON payload on stderr."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WorkbenchError as exc:
            typer.secho(json.dumps(error_payload(exc)), fg=typer.colors.RED, err=True)
            raise typer.Exit(exc.exit_code) from exc

    return wrapper


def _extent(value: str) -> float:
    if value.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return int(value)
    except ValueError as exc:
        raise ParameterError(f"extent must be a positive integer or 'inf', got {value!r}") from exc


def _params(a: float, q: float, eta: float, theta: float, alpha: float, M: str, N: str) -> ModelParams:
    return ModelParams(a=a, q=q, eta=eta, theta=theta, alpha=alpha, M=_extent(M), N=_extent(N))


A = Annotated[float, typer.Option("--a", help="Geometric parameter a in [0, 1].")]
Q = Annotated[float, typer.Option("--q", help="Geometric parameter q in [0, 1].")]
Eta = Annotated[float, typer.Option("--eta", help="Row exponent eta.")]
Theta = Annotated[float, typer.Option("--theta", help="Column exponent theta.")]
Alpha = Annotated[float, typer.Option("--alpha", help="Power-model parameter alpha.")]
MOpt = Annotated[str, typer.Option("--M", help="Number of rows, or 'inf'.")]
NOpt = Annotated[str, typer.Option("--N", help="Number of columns, or 'inf'.")]
Format = Annotated[OutputFormat, typer.Option("--format", help="Output format.")]
Out = Annotated[Path | None, typer.Option("--out", help="Output file; stdout when omitted.")]
Threads = Annotated[int, typer.Option("--threads", envvar=THREADS_ENV, help="Monte Carlo worker threads.")]


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log diagnostics to stderr.")] = False,
):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


@app.command("sample-lpp")
@_guarded
def sample_lpp(
    model: Annotated[Model, typer.Option("--model", help="geo samples geometric fields, pow power fields.")] = Model.GEO,
    orientation: Annotated[str, typer.Option("--orientation", help="down-left (L1) or down-right (L2).")] = "down-left",
    insertion: Annotated[
        tableaux.Insertion | None,
        typer.Option("--insertion", help="Read the corner part through rsk or burge instead of the DP."),
    ] = None,
    a: A = 0.8,
    q: Q = 0.6,
    eta: Eta = 1.0,
    theta: Theta = 1.0,
    alpha: Alpha = 0.0,
    M: MOpt = "inf",
    N: NOpt = "inf",
    n: Annotated[int, typer.Option("--n", help="Number of samples.")] = 1000,
    seed: Annotated[int, typer.Option("--seed")] = 0,
    tv_tol: Annotated[float, typer.Option("--tv-tol", help="Total-variation budget of the truncation box.")] = DEFAULT_TV_TOL,
    threads: Threads = 1,
    fmt: Format = OutputFormat.CSV,
    out: Out = None,
):
    """Sample last-passage times. CSV columns: index, value."""
    p = _params(a, q, eta, theta, alpha, M, N)
    sampler = _sampler(model, orientation, insertion)
    values = harness.sample_statistics(sampler, p, n, seed, threads, tv_tol)
    if model is Model.GEO:
        rows = ((i, int(v)) for i, v in enumerate(values))
    else:
        rows = ((i, float(v)) for i, v in enumerate(values))
    _emit(["index", "value"], rows, fmt, out)


def _sampler(model: Model, orientation: str, insertion: tableaux.Insertion | None) -> harness.Sampler:
    if orientation not in ("down-left", "down-right"):
        raise ParameterError(f"orientation must be down-left or down-right, got {orientation!r}")
    left = orientation == "down-left"
    if model is Model.POW:
        if insertion:
            raise ParameterError("insertions act on geometric fields only")
        return harness.Sampler.L1POW if left else harness.Sampler.L2POW
    if insertion is None:
        return harness.Sampler.L1GEO if left else harness.Sampler.L2GEO
    if (insertion is tableaux.Insertion.RSK) != left:
        raise ParameterError("RSK reads the down-left statistic and Burge the down-right one")
    return harness.Sampler.CORNER_RSK if left else harness.Sampler.CORNER_BURGE


@app.command("sample-pp")
@_guarded
def sample_pp(
    insertion: Annotated[tableaux.Insertion, typer.Option("--insertion")] = tableaux.Insertion.RSK,
    a: A = 0.8,
    q: Q = 0.6,
    eta: Eta = 1.0,
    theta: Theta = 1.0,
    M: MOpt = "inf",
    N: NOpt = "inf",
    seed: Annotated[int, typer.Option("--seed")] = 0,
    tv_tol: Annotated[float, typer.Option("--tv-tol")] = DEFAULT_TV_TOL,
    fmt: Format = OutputFormat.CSV,
    out: Out = None,
):
    """Sample one plane partition through the chosen insertion. CSV columns: i, j, value."""
    p = _params(a, q, eta, theta, 0.0, M, N)
    field = sample_geom_field(p, RandomSeed(seed), tv_tol)
    insert = tableaux.rsk_row_insert if insertion is tableaux.Insertion.RSK else tableaux.burge_column_insert
    pp = insert(field.entries)
    rows = (
        (i + 1, j + 1, int(pp.entries[i, j]))
        for i in range(pp.shape[0])
        for j in range(pp.shape[1])
        if pp.entries[i, j]
    )
    _emit(["i", "j", "value"], rows, fmt, out)


@app.command("exact-check")
@_guarded
def exact_check(
    H: Annotated[int, typer.Option("--H", help="Bound on the parts.")] = 2,
    a: A = 0.8,
    q: Q = 0.5,
    eta: Eta = 1.0,
    theta: Theta = 2.0,
    M: MOpt = "2",
    N: NOpt = "3",
    fmt: Format = OutputFormat.CSV,
    out: Out = None,
):
    """Enumerate plane partitions in the M x N x H box. CSV columns: key, left, central, right, weight."""
    p = _params(a, q, eta, theta, 0.0, M, N)
    _emit(["key", "left", "central", "right", "weight"], exact.weight_table(p, H), fmt, out)


@app.command("kernel-eval")
@_guarded
def kernel_eval(
    kernel: Annotated[KernelName, typer.Option("--kernel")],
    x: Annotated[float, typer.Option("--x")],
    y: Annotated[float, typer.Option("--y")],
    a: A = 0.8,
    q: Q = 0.6,
    eta: Eta = 1.0,
    theta: Theta = 1.0,
    alpha: Alpha = 0.0,
    M: MOpt = "inf",
    N: NOpt = "inf",
):
    """Evaluate one kernel entry and print it with 17 significant digits."""
    typer.echo(f"{_kernel_value(kernel, x, y, a, q, eta, theta, alpha, M, N):.17g}")


def _kernel_value(kernel: KernelName, x, y, a, q, eta, theta, alpha, M, N) -> float:
    if kernel is KernelName.KD:
        return kernels.kd_eval(x, y, _params(a, q, eta, theta, alpha, M, N))
    if kernel is KernelName.KHE:
        return kernels.khe_series(x, y, alpha, eta, theta)
    if kernel is KernelName.KHE_TILDE:
        return kernels.khe_tilde(x, y, alpha, eta, theta)
    if kernel is KernelName.BESSEL:
        return kernels.bessel_kernel(x, y, alpha)
    if kernel is KernelName.KC:
        return kernels.kc_eval(x, y, alpha, eta, theta, int(_extent(M)), int(_extent(N)))
    return kernels.airy_kernel(x, y)


@app.command("fredholm")
@_guarded
def fredholm_det(
    kernel: Annotated[KernelName, typer.Option("--kernel")],
    s: Annotated[float, typer.Option("--s", help="Left end of the gap; a lattice level l for kd.")] = 0.0,
    upper: Annotated[
        float | None, typer.Option("--upper", help="Right end for an interval; the half-line when omitted.")
    ] = None,
    truncation: Annotated[int, typer.Option("--truncation", help="Lattice truncation T for kd.")] = 64,
    tol: Annotated[float, typer.Option("--tol")] = 1e-10,
    a: A = 0.8,
    q: Q = 0.6,
    eta: Eta = 1.0,
    theta: Theta = 1.0,
    alpha: Alpha = 0.0,
    M: MOpt = "inf",
    N: NOpt = "inf",
    fmt: Format = OutputFormat.CSV,
    out: Out = None,
):
    """det(1 - K) on the gap above s. CSV columns: value, est_error, nodes."""
    if kernel is KernelName.KD:
        if s != int(s):
            raise ParameterError("the kd level must be an integer")
        result = fredholm.fdet_discrete(kernels.kd_kernel(_params(a, q, eta, theta, alpha, M, N)), int(s), truncation)
    else:
        fn = _kernel_fn(kernel, eta, theta, alpha, M, N)
        if upper is None:
            result = fredholm.fdet_semiinfinite(fn, s, tol=tol)
        else:
            result = fredholm.fdet_interval(fn, s, upper, tol=tol)
    _emit(["value", "est_error", "nodes"], [(result.value, result.est_error, result.nodes)], fmt, out)


def _kernel_fn(kernel: KernelName, eta, theta, alpha, M, N) -> kernels.KernelFn:
    if kernel is KernelName.KHE:
        return kernels.khe_kernel(alpha, eta, theta)
    if kernel is KernelName.KHE_TILDE:
        return kernels.khe_tilde_kernel(alpha, eta, theta)
    if kernel is KernelName.BESSEL:
        return kernels.bessel_kernel_fn(alpha)
    if kernel is KernelName.KC:
        return kernels.kc_kernel(alpha, eta, theta, int(_extent(M)), int(_extent(N)))
    return kernels.airy_kernel_fn()


@app.command()
@_guarded
def constants(
    a: A = 0.25,
    eta: Eta = 1.0,
    theta: Theta = 1.0,
    fmt: Format = OutputFormat.CSV,
    out: Out = None,
):
    """Soft-edge constants. CSV columns: b, z_c, v_c, c1, c2."""
    c = asymptotics.tw_constants(a, eta, theta)
    _emit(["b", "z_c", "v_c", "c1", "c2"], [(c.b, c.z_c, c.v_c, c.c1, c.c2)], fmt, out)


@app.command()
@_guarded
def experiment(
    experiment_id: Annotated[str | None, typer.Option("--id", help="Experiment id, e.g. prop1 or thm1-finite.")] = None,
    config: Annotated[
        Path | None, typer.Option("--config", exists=True, dir_okay=False, help="YAML or JSON file; overrides flags.")
    ] = None,
    n: Annotated[int | None, typer.Option("--n")] = None,
    seed: Annotated[int | None, typer.Option("--seed")] = None,
    threads: Threads = 1,
    out: Annotated[Path | None, typer.Option("--out", help="Report JSON; stdout when omitted.")] = None,
    cdf_out: Annotated[Path | None, typer.Option("--cdf-out", help="CSV of the compared CDFs.")] = None,
):
    """Run one acceptance experiment; exit 2 when its statistic misses the tolerance."""
    flags = {"experiment": experiment_id, "n": n, "seed": seed, "threads": threads}
    settings = {k: v for k, v in flags.items() if v is not None}
    if config is not None:
        settings.update(read_config_file(config))
    report = harness.experiment(ExperimentConfig.from_mapping(settings))
    if out is None:
        typer.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        harness.write_report_json(report, out)
    if cdf_out is not None:
        harness.write_cdf_csv(report, cdf_out)
    if not report.passed:
        typer.secho(
            f"{report.experiment}: statistic {report.ks_stat:.4g} misses tolerance {report.tolerance:.4g}",
            fg=typer.colors.YELLOW,
            err=True,
        )
        raise typer.Exit(2)
