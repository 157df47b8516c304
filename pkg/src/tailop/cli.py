"""Command-line driver.

Subcommands cover copula evaluation, tail-limit and tail-order estimation,
seeded simulation, and the three verification workflows.  Output is a
machine-readable report, JSON by default:

    { "command": ..., "params": ..., "results": [ {...}, ... ], "version": ... }

or CSV with one row per grid point.  Floats are printed with 17 significant
digits so the decimal text round-trips to the exact IEEE-754 value, and the
payload carries no timestamps: identical configurations produce identical
bytes.  Exit codes: 0 success, 2 invalid parameters (the message names the
offending key), 3 numeric failure (a verification that did not pass, or an
estimator that could not produce the requested quantity).  Diagnostics such
as a diverging estimate are results, not failures, and exit 0.

The TAILOP_THREADS environment variable caps worker parallelism (0 = auto).
All current evaluation paths are single-threaded, so any valid cap is
honored trivially; the value is still validated here to keep configs
portable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .copulas import (
    MOParams,
    independence_copula,
    mo_complement_copula,
    mo_survival_copula,
    pareto4_survival_copula,
)
from .errors import DomainError, TailopError
from .margins import mo_exponential_margin, pareto_margin, pareto4_margin
from .matpow import TailIndexMatrix
from .mrv import (
    NonStandardRVModel,
    exponent_from_intensity,
    intensity_from_copula,
    mo_pareto_intensity_oracle,
    pareto4_intensity_oracle,
    verify_nonstandard_rv,
)
from .taildep import LimitGrid, estimate_tail_function, estimate_tail_order, mo_bL_operator, pareto4_lower_exponent
from .simulate import sample_mo, sample_pareto4, to_copula_scale

COMMANDS = (
    "eval-copula",
    "tail-estimate",
    "tail-order",
    "simulate",
    "verify-theorem1",
    "verify-theorem2",
    "verify-example4",
)

_FAMILY_KEYS = {
    "mo": ("l1", "l2", "l12"),
    "mo-complement": ("l1", "l2", "l12"),
    "pareto4": ("lam", "beta"),
    "independence": ("d",),
}


class _CliError(Exception):
    """Invalid configuration; carries the offending key for the message."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: the subcommand, its validated parameter
    map, and where/how to write the report."""

    command: str
    params: dict
    output: str
    fmt: str


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_cap()
        config, rows, failed = _execute(args)
        emit_report(rows, config)
    except _CliError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except DomainError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except TailopError as error:
        print(f"error: {error}", file=sys.stderr)
        return 3
    return 3 if failed else 0


def run(config: RunConfig) -> int:
    """Programmatic entry point mirroring the command line.

    Boolean parameters are treated as flags (present when true); repeatable
    parameters may be given as lists.
    """
    argv = [config.command]
    for key, value in config.params.items():
        if value is False or value is None:
            continue
        values = value if isinstance(value, (list, tuple)) else [value]
        if value is True:
            argv.append(f"--{key}")
            continue
        for item in values:
            argv.extend([f"--{key}", str(item)])
    argv.extend(["--out", config.output, "--format", config.fmt])
    return main(argv)


def emit_report(rows, config: RunConfig) -> None:
    """Write the report rows in the configured format.

    Refuses empty results; all rows must share one key set so the CSV
    header is well defined.
    """
    if not rows:
        raise _CliError(config.command, "no results to report")
    keys = list(rows[0].keys())
    for row in rows:
        if list(row.keys()) != keys:
            raise _CliError(config.command, "result rows disagree on their columns")
    if config.fmt == "json":
        text = _json_document(config, rows)
    else:
        text = _csv_document(keys, rows)
    _write_output(config.output, text)


def _execute(args) -> tuple:
    handler = {
        "eval-copula": _cmd_eval_copula,
        "tail-estimate": _cmd_tail_estimate,
        "tail-order": _cmd_tail_order,
        "simulate": _cmd_simulate,
        "verify-theorem1": _cmd_verify_theorem1,
        "verify-theorem2": _cmd_verify_theorem2,
        "verify-example4": _cmd_verify_example4,
    }[args.command]
    params, rows, failed = handler(args)
    fmt = args.format or ("csv" if args.command == "simulate" else "json")
    config = RunConfig(command=args.command, params=params, output=args.out, fmt=fmt)
    return config, rows, failed


def _cmd_eval_copula(args):
    copula, family_params = _build_copula(args)
    if not args.u:
        raise _CliError("--u", "at least one evaluation point is required")
    rows = []
    for spec in args.u:
        point = _parse_floats("--u", spec, count=copula.dim)
        u = np.asarray(point)
        if np.any(u < 0.0) or np.any(u > 1.0):
            raise _CliError("--u", f"coordinates must lie in [0, 1], got {spec}")
        row = {f"u{k + 1}": point[k] for k in range(copula.dim)}
        row["cdf"] = float(copula.cdf(u))
        row["joint_survival"] = float(copula.joint_survival(u))
        rows.append(row)
    params = {"copula": args.copula, **family_params}
    return params, rows, False


def _cmd_tail_estimate(args):
    copula, family_params = _build_copula(args)
    matrix = _parse_matrix("--A", args.A, copula.dim)
    grid = _limit_grid(args)
    points = _weight_points(args, copula.dim)
    rows = []
    for point in points:
        estimate = estimate_tail_function(
            copula, matrix, np.asarray(point), grid, side=args.side, target=args.target,
        )
        row = {f"w{k + 1}": point[k] for k in range(copula.dim)}
        row.update(
            value=estimate.value,
            slope=estimate.slope,
            intercept=estimate.intercept,
            converged=estimate.converged,
            diagnostic=estimate.diagnostic,
            last_ratio=estimate.last_ratio,
        )
        rows.append(row)
    params = {
        "copula": args.copula, **family_params, "A": args.A,
        "side": args.side, "target": args.target,
        "u_max": grid.u_max, "ratio": grid.ratio, "count": grid.count,
    }
    return params, rows, False


def _cmd_tail_order(args):
    copula, family_params = _build_copula(args)
    grid = _limit_grid(args)
    points = _weight_points(args, copula.dim)
    rows = []
    for point in points:
        estimate = estimate_tail_order(copula, np.asarray(point), grid, side=args.side)
        row = {f"w{k + 1}": point[k] for k in range(copula.dim)}
        row.update(
            kappa=estimate.slope,
            value=estimate.value,
            converged=estimate.converged,
            diagnostic=estimate.diagnostic,
        )
        rows.append(row)
    params = {
        "copula": args.copula, **family_params, "side": args.side,
        "u_max": grid.u_max, "ratio": grid.ratio, "count": grid.count,
    }
    return params, rows, False


def _cmd_simulate(args):
    n = args.n
    if n is None or n < 1:
        raise _CliError("--n", "a positive sample count is required")
    if args.seed is None:
        raise _CliError("--seed", "a seed is required for reproducible output")
    if args.model == "mo":
        for key in ("l1", "l2", "l12"):
            _require(args, key, "mo")
        params = MOParams(args.l1, args.l2, args.l12)
        batch = sample_mo(params, n, args.seed)
        margins = (
            mo_exponential_margin(params.lambda1 + params.lambda12),
            mo_exponential_margin(params.lambda2 + params.lambda12),
        )
    else:
        for key in ("lam", "beta", "gamma"):
            _require(args, key, "pareto4")
        g1, g2 = _parse_floats("--gamma", args.gamma, count=2)
        batch = sample_pareto4(args.lam, args.beta, g1, g2, n, args.seed)
        margins = (
            pareto4_margin(args.lam, args.beta, g1),
            pareto4_margin(args.lam, args.beta, g2),
        )
    if args.copula_scale:
        batch = to_copula_scale(batch, margins)
    rows = [
        dict(zip(batch.names, (float(col[k]) for col in batch.columns)))
        for k in range(batch.n)
    ]
    params = {k: v for k, v in batch.params.items()}
    params.update(n=n, seed=args.seed)
    return params, rows, False


def _verification_model(args):
    for key in ("l1", "l2", "l12"):
        _require(args, key, "the min-shock model")
    mo = MOParams(args.l1, args.l2, args.l12)
    a1, a2 = _parse_floats("--alpha", args.alpha, count=2)
    if a1 <= 0.0 or a2 <= 0.0:
        raise _CliError("--alpha", "marginal indexes must be positive")
    copula = mo_complement_copula(args.l1, args.l2, args.l12)
    margins = (pareto_margin(a1), pareto_margin(a2))
    model = NonStandardRVModel(copula, margins, lam=(mo.beta1, mo.beta2))
    return mo, (a1, a2), model


def _cmd_verify_theorem1(args):
    mo, alphas, model = _verification_model(args)
    oracle = mo_pareto_intensity_oracle(mo, alphas)
    n1, n2 = _parse_grid("--grid", args.grid)
    t_max = args.t_max
    if not (math.isfinite(t_max) and t_max > 100.0):
        raise _CliError("--t-max", f"must exceed 100, got {t_max!r}")
    if not (0.0 < args.rel_tol < 1.0):
        raise _CliError("--rel-tol", f"must lie in (0, 1), got {args.rel_tol!r}")
    t_grid = np.logspace(2.0, math.log10(t_max), 7)
    w_grid = [(w1, w2) for w1 in _log_points(n1) for w2 in _log_points(n2)]
    report = verify_nonstandard_rv(
        model.exceedance_probability, model.scaling, oracle,
        t_grid=t_grid, w_grid=w_grid, rel_tol=args.rel_tol,
    )
    rows = report.to_rows()
    params = {
        "l1": mo.lambda1, "l2": mo.lambda2, "l12": mo.lambda12,
        "alpha1": alphas[0], "alpha2": alphas[1],
        "t_max": float(t_max), "rel_tol": float(args.rel_tol),
        "grid": args.grid, "support": report.label,
        "max_rel_deviation": report.max_rel_deviation,
    }
    return params, rows, not report.passed


def _cmd_verify_theorem2(args):
    mo, alphas, model = _verification_model(args)
    tol = args.tol
    if not (0.0 < tol < 1.0):
        raise _CliError("--tol", f"must lie in (0, 1), got {tol!r}")
    n1, n2 = _parse_grid("--grid", args.grid)

    def tail(w):
        return mo_bL_operator(w, mo)

    measure = intensity_from_copula(model, tail)
    recovered = exponent_from_intensity(measure, model.alphas, model.limits)
    rows = []
    worst = 0.0
    for w1 in _log_points(n1):
        for w2 in _log_points(n2):
            w = np.array([w1, w2])
            expected = tail(w)
            value = recovered(w)
            deviation = abs(value - expected) / max(abs(expected), 1e-300)
            worst = max(worst, deviation)
            rows.append({
                "w1": w1, "w2": w2,
                "input_value": expected, "round_trip_value": value,
                "rel_deviation": deviation, "passed": deviation <= tol,
            })
    diag = recovered.matrix.eigenvalues
    matrix_dev = max(abs(float(a) - b) for a, b in zip(sorted(diag, reverse=True), sorted(model.lam, reverse=True)))
    failed = worst > tol or matrix_dev > tol
    params = {
        "l1": mo.lambda1, "l2": mo.lambda2, "l12": mo.lambda12,
        "alpha1": alphas[0], "alpha2": alphas[1], "tol": float(tol),
        "grid": args.grid, "max_rel_deviation": worst,
        "matrix_deviation": matrix_dev,
    }
    return params, rows, failed


def _cmd_verify_example4(args):
    for key in ("lam", "beta", "gamma"):
        _require(args, key, "the heavy-tail mixture model")
    g1, g2 = _parse_floats("--gamma", args.gamma, count=2)
    tol = args.tol
    if not (0.0 < tol < 1.0):
        raise _CliError("--tol", f"must lie in (0, 1), got {tol!r}")
    n1, n2 = _parse_grid("--grid", args.grid)
    lam, beta = args.lam, args.beta
    measure = pareto4_intensity_oracle(lam, beta, g1, g2)
    alphas = (beta / g1, beta / g2)
    limits = ((1.0 + lam) ** -beta,) * 2
    composed = exponent_from_intensity(measure, alphas, limits)
    rows = []
    worst = 0.0
    for w1 in _log_points(n1):
        for w2 in _log_points(n2):
            w = np.array([w1, w2])
            direct = pareto4_lower_exponent(w, lam, beta)
            value = composed(w)
            deviation = abs(value - direct) / max(abs(direct), 1e-300)
            worst = max(worst, deviation)
            rows.append({
                "w1": w1, "w2": w2,
                "exponent_value": direct, "intensity_value": value,
                "rel_deviation": deviation, "passed": deviation <= tol,
            })
    params = {
        "lam": lam, "beta": beta, "gamma1": g1, "gamma2": g2,
        "tol": float(tol), "grid": args.grid, "max_rel_deviation": worst,
    }
    return params, rows, worst > tol


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailop",
        description="Operator-scaled tail dependence of copulas: evaluation, estimation, simulation, verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    def add_common(sub):
        sub.add_argument("--out", default="-", help="output path, - for stdout")
        sub.add_argument("--format", choices=("json", "csv"), default=None,
                         help="report format (default json; simulate defaults to csv)")

    def add_family(sub):
        sub.add_argument("--copula", required=True,
                         choices=("mo", "mo-complement", "pareto4", "independence"))
        sub.add_argument("--l1", type=float, default=None, help="first individual shock rate")
        sub.add_argument("--l2", type=float, default=None, help="second individual shock rate")
        sub.add_argument("--l12", type=float, default=None, help="joint shock rate")
        sub.add_argument("--lam", type=float, default=None, help="mixture dependence parameter")
        sub.add_argument("--beta", type=float, default=None, help="mixture shape parameter")
        sub.add_argument("--d", type=int, default=None, help="dimension (independence only)")

    def add_grid_knobs(sub):
        sub.add_argument("--u-max", type=float, default=1e-2)
        sub.add_argument("--ratio", type=float, default=0.5)
        sub.add_argument("--count", type=int, default=24)

    sub = subs.add_parser("eval-copula", help="evaluate cdf and joint survival at given points")
    add_family(sub)
    sub.add_argument("--u", action="append", default=None, metavar="U1,U2,...",
                     help="evaluation point, repeatable")
    add_common(sub)

    sub = subs.add_parser("tail-estimate", help="estimate an order-1 operator tail limit")
    add_family(sub)
    sub.add_argument("--A", required=True, metavar="diag:a,b|full:r11,r12,...",
                     help="scaling matrix")
    sub.add_argument("--w", action="append", default=None, metavar="W1,W2,...",
                     help="weight vector, repeatable")
    sub.add_argument("--w-grid", default=None, metavar="NxM",
                     help="log-spaced weight grid over [0.25, 4] per axis")
    sub.add_argument("--side", choices=("lower", "upper"), default="lower")
    sub.add_argument("--target", choices=("cdf", "exponent"), default="cdf")
    add_grid_knobs(sub)
    add_common(sub)

    sub = subs.add_parser("tail-order", help="fit the joint tail decay order along a ray")
    add_family(sub)
    sub.add_argument("--w", action="append", default=None, metavar="W1,W2,...")
    sub.add_argument("--w-grid", default=None, metavar="NxM")
    sub.add_argument("--side", choices=("lower", "upper"), default="lower")
    add_grid_knobs(sub)
    add_common(sub)

    sub = subs.add_parser("simulate", help="draw a seeded sample batch")
    sub.add_argument("--model", required=True, choices=("mo", "pareto4"))
    sub.add_argument("--l1", type=float, default=None)
    sub.add_argument("--l2", type=float, default=None)
    sub.add_argument("--l12", type=float, default=None)
    sub.add_argument("--lam", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--gamma", default=None, metavar="G1,G2")
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--copula-scale", action="store_true",
                     help="transform the batch through its own margins")
    add_common(sub)

    def add_verify_model(sub):
        sub.add_argument("--l1", type=float, default=None)
        sub.add_argument("--l2", type=float, default=None)
        sub.add_argument("--l12", type=float, default=None)
        sub.add_argument("--alpha", default="1,1", metavar="A1,A2",
                         help="marginal tail indexes")

    sub = subs.add_parser("verify-theorem1",
                          help="semi-analytic prelimit check of the copula-to-intensity direction")
    add_verify_model(sub)
    sub.add_argument("--grid", default="3x3")
    sub.add_argument("--t-max", type=float, default=1e8)
    sub.add_argument("--rel-tol", type=float, default=0.02)
    add_common(sub)

    sub = subs.add_parser("verify-theorem2",
                          help="round trip: intensity back to the copula-scale tail limit")
    add_verify_model(sub)
    sub.add_argument("--grid", default="5x5")
    sub.add_argument("--tol", type=float, default=1e-10)
    add_common(sub)

    sub = subs.add_parser("verify-example4",
                          help="closed-form identity between the mixture exponent and its intensity")
    sub.add_argument("--lambda", dest="lam", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--gamma", default=None, metavar="G1,G2")
    sub.add_argument("--grid", default="5x5")
    sub.add_argument("--tol", type=float, default=1e-10)
    add_common(sub)

    return parser


def _build_copula(args):
    family = args.copula
    allowed = _FAMILY_KEYS[family]
    for key in ("l1", "l2", "l12", "lam", "beta", "d"):
        value = getattr(args, key, None)
        if value is not None and key not in allowed:
            raise _CliError(f"--{key}", f"not a parameter of the {family} family")
    for key in allowed:
        _require(args, key, family)
    try:
        if family == "mo":
            return mo_survival_copula(args.l1, args.l2, args.l12), {
                "l1": args.l1, "l2": args.l2, "l12": args.l12}
        if family == "mo-complement":
            return mo_complement_copula(args.l1, args.l2, args.l12), {
                "l1": args.l1, "l2": args.l2, "l12": args.l12}
        if family == "pareto4":
            return pareto4_survival_copula(args.lam, args.beta), {
                "lam": args.lam, "beta": args.beta}
        return independence_copula(args.d), {"d": args.d}
    except TailopError as error:
        raise _CliError("--copula", str(error)) from error


def _require(args, key: str, family: str) -> None:
    if getattr(args, key, None) is None:
        raise _CliError(f"--{key}", f"required for {family}")


def _weight_points(args, dim: int) -> list:
    if args.w and args.w_grid:
        raise _CliError("--w-grid", "give either --w or --w-grid, not both")
    if args.w:
        return [_parse_floats("--w", spec, count=dim) for spec in args.w]
    if args.w_grid:
        if dim != 2:
            raise _CliError("--w-grid", "weight grids are planar; use repeated --w instead")
        n1, n2 = _parse_grid("--w-grid", args.w_grid)
        return [(w1, w2) for w1 in _log_points(n1) for w2 in _log_points(n2)]
    raise _CliError("--w", "at least one weight vector is required")


def _limit_grid(args) -> LimitGrid:
    try:
        return LimitGrid(u_max=args.u_max, ratio=args.ratio, count=args.count)
    except TailopError as error:
        raise _CliError("--u-max/--ratio/--count", str(error)) from error


def _parse_floats(key: str, text: str, count=None) -> tuple:
    try:
        values = tuple(float(part) for part in str(text).split(","))
    except ValueError:
        raise _CliError(key, f"expected comma-separated reals, got {text!r}") from None
    if count is not None and len(values) != count:
        raise _CliError(key, f"expected {count} values, got {len(values)} in {text!r}")
    if any(not math.isfinite(v) for v in values):
        raise _CliError(key, f"values must be finite, got {text!r}")
    return values


def _parse_matrix(key: str, text: str, dim: int) -> TailIndexMatrix:
    text = str(text)
    try:
        if text.startswith("diag:"):
            values = _parse_floats(key, text[len("diag:"):])
            if len(values) != dim:
                raise _CliError(key, f"need {dim} diagonal entries, got {len(values)}")
            return TailIndexMatrix.diagonal(values)
        if text.startswith("full:"):
            values = _parse_floats(key, text[len("full:"):])
            if len(values) != dim * dim:
                raise _CliError(key, f"need {dim * dim} row-major entries, got {len(values)}")
            entries = np.asarray(values, dtype=float).reshape(dim, dim)
            return TailIndexMatrix(entries)
    except TailopError as error:
        raise _CliError(key, str(error)) from error
    raise _CliError(key, f"expected diag:... or full:..., got {text!r}")


def _parse_grid(key: str, text: str) -> tuple:
    parts = str(text).lower().split("x")
    if len(parts) != 2:
        raise _CliError(key, f"expected NxM, got {text!r}")
    try:
        n1, n2 = int(parts[0]), int(parts[1])
    except ValueError:
        raise _CliError(key, f"expected integers in NxM, got {text!r}") from None
    if n1 < 1 or n2 < 1:
        raise _CliError(key, f"grid sides must be positive, got {text!r}")
    return n1, n2


def _log_points(n: int) -> list:
    if n == 1:
        return [1.0]
    return [float(x) for x in np.logspace(math.log10(0.25), math.log10(4.0), n)]


def _thread_cap() -> int:
    raw = os.environ.get("TAILOP_THREADS")
    if raw is None:
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise _CliError("TAILOP_THREADS", f"expected an integer, got {raw!r}") from None
    if value < 0:
        raise _CliError("TAILOP_THREADS", f"must be >= 0, got {value}")
    return value


def _json_document(config: RunConfig, rows) -> str:
    payload = {
        "command": config.command,
        "params": config.params,
        "results": rows,
        "version": __version__,
    }
    return _json_value(payload, 0) + "\n"


def _json_value(value, depth: int) -> str:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{inner}{_json_string(str(k))}: {_json_value(v, depth + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner}{_json_value(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _json_float(float(value))
    if value is None:
        return "null"
    return _json_string(str(value))


def _json_string(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _json_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _csv_document(keys, rows) -> str:
    lines = [",".join(keys)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[k]) for k in keys))
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    text = str(value)
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as handle:
            handle.write(text)
    except OSError as error:
        raise _CliError("--out", f"cannot write {path!r}: {error}") from error


if __name__ == "__main__":
    sys.exit(main())
