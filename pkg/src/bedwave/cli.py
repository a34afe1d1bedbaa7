"""Command-line front end: ``bedwave {dispersion,stokes,solitary,exact,compare}``.

Options can also come from a ``key=value`` file given with ``--config``;
explicit flags win over file values. Results go to ``<out>/out.csv`` (or a
subcommand-specific CSV) and ``<out>/report.txt``. Exit status is 0 on
success, 2 for an input contract violation and 3 for a numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .errors import (
    BadConfig,
    BadHeader,
    BedwaveError,
    ContractViolation,
    NonUniformGrid,
    PeriodMismatch,
)
from .numerics import Grid1D, SampledFunction
from .oracles import (
    closed_form_solitary,
    exact_zero_vorticity_solve,
    second_order_terms,
    sech2_trace_derivatives,
)
from .rayleigh import (
    DEFAULT_STEPS,
    WaveParameters,
    bifurcation_speed,
    burns_speed,
    closed_form_burns,
    closed_form_dispersion,
)
from .shear import ConstantVorticity, ZeroFlow, make_profile
from .solitary import DEFAULT_NY, DecayingTrace, reconstruct_solitary
from .stokes import PeriodicPressure, reconstruct_stokes

FLOAT_FMT = "%.12e"
GRID_RTOL = 1e-9


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParsedTrace:
    grid: Grid1D
    columns: dict
    data: object  # PeriodicPressure, or dict of DecayingTrace keyed by column name


def read_trace_csv(path, first="x", allowed=("p1", "p2", "p3")):
    """Read a uniform-grid CSV with header ``x,<cols>`` into ``(Grid1D, {name: values})``."""
    with open(Path(path), newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise BadHeader(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if header[0] != first or len(header) < 2 or header[1:] != list(allowed[: len(header) - 1]):
        want = ",".join([first, *allowed])
        raise BadHeader(f"{path}: header {','.join(header)!r} does not match {want!r} (leading columns)")
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise BadHeader(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != len(header) or data.shape[0] < 3:
        raise BadHeader(f"{path}: expected at least 3 rows of {len(header)} columns")
    if not np.all(np.isfinite(data)):
        raise BadHeader(f"{path}: non-finite entry")
    x = data[:, 0]
    dx = np.diff(x)
    if np.any(dx <= 0):
        raise NonUniformGrid(f"{path}: x must be strictly increasing")
    step = (x[-1] - x[0]) / (x.size - 1)
    if np.max(np.abs(dx - step)) > GRID_RTOL * step:
        raise NonUniformGrid(f"{path}: x spacing varies by {np.max(np.abs(dx - step)) / step:.2e} relative")
    grid = Grid1D(float(x[0]), float(step), x.size)
    return grid, {name: data[:, i + 1] for i, name in enumerate(header[1:])}


def parse_pressure_trace(path, expected: str, k: float | None = None, decay_tol: float = 1e-10, drop_tol: float = 1e-12) -> ParsedTrace:
    """Parse ``x,p1[,p2[,p3]]`` as one period of a Stokes trace or as decaying solitary traces.

    Periodic: the samples must cover one period without its right endpoint;
    with ``k`` given the span must equal ``2 pi / k``, otherwise the period is
    read off the grid.
    """
    grid, cols = read_trace_csv(path)
    if expected == "periodic":
        if "p3" in cols:
            raise BadHeader(f"{path}: periodic traces carry at most p1,p2")
        period = grid.count * grid.step
        if k is not None and abs(period * k - 2 * np.pi) > GRID_RTOL * 2 * np.pi:
            raise PeriodMismatch(f"{path}: samples span {period:.12g}, expected one period 2*pi/k = {2 * np.pi / k:.12g}")
        pressure = PeriodicPressure.from_samples(cols["p1"], cols.get("p2"), grid.start, period, drop_tol=drop_tol)
        return ParsedTrace(grid, cols, pressure)
    if expected == "decaying":
        traces = {name: DecayingTrace(grid, v, decay_tol) for name, v in cols.items()}
        return ParsedTrace(grid, cols, traces)
    raise ValueError(f"expected must be 'periodic' or 'decaying', got {expected!r}")


def read_derivatives(path, grid: Grid1D, scale: float = 1.0) -> dict:
    """Optional exact derivatives of p1, header ``x,d1[,d2[,d3[,d4]]]`` on the trace grid."""
    g2, cols = read_trace_csv(path, allowed=("d1", "d2", "d3", "d4"))
    if g2.count != grid.count or abs(g2.start - grid.start) > GRID_RTOL * abs(grid.start) + 1e-300 or abs(g2.step - grid.step) > GRID_RTOL * grid.step:
        raise NonUniformGrid(f"{path}: derivative grid differs from the trace grid")
    return {int(name[1]): v * scale ** int(name[1]) for name, v in cols.items()}


def load_config(path) -> dict:
    """``key=value`` lines; ``#`` starts a comment; keys use option names."""
    cfg = {}
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise BadConfig(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def format_csv(header, columns) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    arr = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    for row in arr:
        buf.write(",".join(FLOAT_FMT % v for v in row) + "\n")
    return buf.getvalue()


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v
    return str(v)


def format_report(title, items) -> str:
    lines = [title, "=" * len(title)]
    width = max(len(k) for k, _ in items)
    for key, value in items:
        lines.append(f"{key.ljust(width)} : {_fmt(value)}")
    return "\n".join(lines) + "\n"


def _emit(args, files: dict, report: str):
    """Write all outputs only after every computation has succeeded."""
    out = Path(args.out)
    for name, text in files.items():
        write_atomic(out / name, text)
    write_atomic(out / "report.txt", report)
    if not args.quiet:
        sys.stdout.write(report)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _profile(args):
    if args.h0 is None:
        raise BadConfig("--h0 is required")
    return make_profile(args.profile, args.h0, args.gamma, args.profile_csv)


def _profile_items(args):
    items = [("profile", args.profile), ("h0", float(args.h0))]
    if args.profile == "constant":
        items.append(("gamma", float(args.gamma)))
    if args.profile == "csv":
        items.append(("profile_csv", args.profile_csv))
    return items


def cmd_dispersion(args) -> int:
    profile = _profile(args)
    g, k, h0 = args.g, args.k, profile.h0
    bracket = tuple(args.bracket) if args.bracket else None
    rows = []
    if args.speed in ("bifurcation", "both"):
        rows.append(("c_bifurcation", bifurcation_speed(profile, g, h0, k, bracket, n_steps=args.n_steps)))
        if isinstance(profile, ZeroFlow):
            rows.append(("c_closed_form", closed_form_dispersion("zero", g, h0, k)))
        elif isinstance(profile, ConstantVorticity):
            rows.append(("c_closed_form", closed_form_dispersion("constant", g, h0, k, profile.gamma)))
            rows.append(("c_closed_form_relative_to_surface", closed_form_dispersion("constant", g, h0, k, profile.gamma, frame="surface")))
    if args.speed in ("burns", "both"):
        rows.append(("c_burns", burns_speed(profile, g, bracket, n_steps=args.n_steps)))
        if isinstance(profile, ZeroFlow):
            rows.append(("c_burns_closed_form", closed_form_burns("zero", g, h0)))
        elif isinstance(profile, ConstantVorticity):
            rows.append(("c_burns_closed_form", closed_form_burns("constant", g, h0, profile.gamma)))
    items = [*_profile_items(args), ("g", float(g)), ("k", float(k)), ("max_U", profile.max_velocity()), *rows]
    files = {"dispersion.csv": "quantity,value\n" + "".join(f"{n},{FLOAT_FMT % v}\n" for n, v in rows)}
    _emit(args, files, format_report("bedwave dispersion", items))
    return 0


def _speed(args, compute, source):
    if args.c is not None:
        return float(args.c), "override (--c)"
    return compute(), source


def cmd_stokes(args) -> int:
    profile = _profile(args)
    parsed = parse_pressure_trace(args.trace, "periodic", args.k, drop_tol=args.coef_tol)
    grid = parsed.grid
    k = 2 * np.pi / (grid.count * grid.step)
    bracket = tuple(args.bracket) if args.bracket else None
    c, source = _speed(args, lambda: bifurcation_speed(profile, args.g, profile.h0, k, bracket, n_steps=args.n_steps), "bifurcation speed")
    params = WaveParameters(profile.h0, c, args.g, k, args.eps)
    rec = reconstruct_stokes(profile, params, parsed.data, args.order, n_steps=args.n_steps, workers=args.workers, x_grid=grid)
    header, cols = ["x", "eta1"], [grid.coords, rec.eta1.values]
    if rec.eta2 is not None:
        header.append("eta2")
        cols.append(rec.eta2.values)
    header.append("eta_total")
    cols.append(rec.elevation.values)
    active = int(np.count_nonzero(parsed.data.b1)) - (1 if parsed.data.b1[parsed.data.N] != 0 else 0)
    items = [
        ("eps", float(args.eps)),
        ("eps_note", "eta_total = eps*eta1 + eps^2*eta2; eps=1 means the trace already carries its physical size"),
        *_profile_items(args),
        ("g", float(args.g)),
        ("k", float(k)),
        ("c", c),
        ("c_source", source),
        ("order", args.order),
        ("samples", grid.count),
        ("active_modes", active),
        ("n_steps", args.n_steps),
        ("backend", _kernels.backend()),
        ("max_abs_eta1", float(np.max(np.abs(rec.eta1.values)))),
    ]
    if rec.eta2 is not None:
        items.append(("max_abs_eta2", float(np.max(np.abs(rec.eta2.values)))))
    items.append(("max_abs_eta_total", float(np.max(np.abs(rec.elevation.values)))))
    _emit(args, {"out.csv": format_csv(header, cols)}, format_report("bedwave stokes", items))
    return 0


def cmd_solitary(args) -> int:
    profile = _profile(args)
    grid_in, cols = read_trace_csv(args.trace)
    # derivatives are taken in the scaled variable x = sqrt(eps) * x_phys
    scale = np.sqrt(args.eps) if args.x_units == "physical" else 1.0
    if args.x_units == "physical" and args.eps <= 0:
        raise BadConfig("--x-units physical needs eps > 0")
    grid = Grid1D(grid_in.start * scale, grid_in.step * scale, grid_in.count)
    derivs = read_derivatives(args.derivatives, grid_in, 1.0 / scale) if args.derivatives else {}
    b1 = DecayingTrace(grid, cols["p1"], args.decay_tol, derivs)
    b2 = DecayingTrace(grid, cols["p2"], args.decay_tol) if "p2" in cols else None
    b3 = DecayingTrace(grid, cols["p3"], args.decay_tol) if "p3" in cols else None
    c, source = _speed(args, lambda: burns_speed(profile, args.g, n_steps=args.n_steps), "Burns critical speed")
    params = WaveParameters(profile.h0, c, args.g, 1.0, args.eps)
    rec = reconstruct_solitary(profile, params, b1, b2, b3, args.order, ny=args.ny)
    header, out_cols = ["x"], [grid_in.coords]
    for j, eta in enumerate(rec.orders, 1):
        header.append(f"eta{j}")
        out_cols.append(eta.values)
    header.append("eta_total")
    out_cols.append(rec.surface.values - profile.h0)
    items = [
        ("eps", float(args.eps)),
        ("eps_note", "eta_total = eps*eta1 + eps^2*eta2 + eps^3*eta3; eps=1 means the traces already carry their physical size"),
        ("x_units", args.x_units),
        ("x_scaling", "x_scaled = sqrt(eps) * x_physical" if args.x_units == "physical" else "input x is the scaled variable"),
        *_profile_items(args),
        ("g", float(args.g)),
        ("c", c),
        ("c_source", source),
        ("order", args.order),
        ("samples", grid.count),
        ("ny", args.ny),
        ("decay_tol", float(args.decay_tol)),
        ("p1_derivatives", "supplied " + ",".join(f"d{k}" for k in sorted(derivs)) if derivs else "finite differences"),
    ]
    for j, eta in enumerate(rec.orders, 1):
        items.append((f"max_abs_eta{j}", float(np.max(np.abs(eta.values)))))
    _emit(args, {"out.csv": format_csv(header, out_cols)}, format_report("bedwave solitary", items))
    return 0


def cmd_exact(args) -> int:
    if args.h0 is None:
        raise BadConfig("--h0 is required")
    grid, cols = read_trace_csv(args.trace, allowed=("p1",))
    period = grid.count * grid.step
    k = 2 * np.pi / period
    if args.k is not None and abs(period * args.k - 2 * np.pi) > GRID_RTOL * 2 * np.pi:
        raise PeriodMismatch(f"{args.trace}: samples span {period:.12g}, expected 2*pi/k")
    c, source = _speed(args, lambda: closed_form_dispersion("zero", args.g, args.h0, k), "linear dispersion relation")
    state = exact_zero_vorticity_solve(SampledFunction(grid, cols["p1"]), c, args.h0, args.g, args.tol, args.max_iter, args.relaxation)
    log = "iteration,update\n" + "".join(f"{i},{FLOAT_FMT % r}\n" for i, r in enumerate(state.history, 1))
    items = [
        ("h0", float(args.h0)),
        ("g", float(args.g)),
        ("k", float(k)),
        ("c", c),
        ("c_source", source),
        ("iterations", state.iteration),
        ("final_update", state.residual),
        ("tol", float(args.tol)),
        ("relaxation", float(args.relaxation)),
        ("backend", _kernels.backend()),
    ]
    files = {"out.csv": format_csv(["x", "eta"], [grid.coords, state.eta.values]), "iterations.csv": log}
    _emit(args, files, format_report("bedwave exact", items))
    return 0


def _h0_list(text):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise BadConfig(f"--h0-list must be comma-separated numbers, got {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise BadConfig("--h0-list needs positive depths")
    return vals


def cmd_compare(args) -> int:
    g, b = args.g, args.b
    if args.which == "stokes":
        header = [
            "h0", "c",
            "second_order_mean", "second_order_harmonic",
            "ovdh2_mean", "ovdh2_harmonic",
            "ovdh2_minus_mean", "ovdh2_minus_harmonic",
            "whitham2_mean", "whitham2_harmonic",
        ]
        rows = []
        for h0 in _h0_list(args.h0_list):
            c = closed_form_dispersion("zero", g, h0, 1.0)
            row = [h0, c]
            for variant in ("stokes", "ovdh2", "ovdh2_minus", "whitham2"):
                row.extend(second_order_terms(variant, b, c, h0, g))
            rows.append(row)
        table = format_csv(header, list(np.array(rows).T))
        items = [("table", "second-order elevation, mean and cos(2x) amplitude, zero vorticity, k=1"), ("b", float(b)), ("g", float(g))]
        _emit(args, {"compare.csv": table}, format_report("bedwave compare stokes", items) + "\n" + table)
        return 0
    # solitary: zero vorticity, sech^2 bed pressure, closed forms against the pipeline
    h0 = args.h0 if args.h0 is not None else 1.0
    profile = ZeroFlow(h0)
    c = burns_speed(profile, g)
    d = sech2_trace_derivatives(args.amplitude)
    b1 = DecayingTrace.from_function(d[0], count=4001)
    rec = reconstruct_solitary(profile, WaveParameters(h0, c, g), b1, order=3)
    _, e2, e3 = closed_form_solitary("zero", d, c, h0, g)
    _, _, e3_lin = closed_form_solitary("zero", d, c, h0, g, eta3_form="linear_depth")
    o1, o2, o3 = closed_form_solitary("ovdh_dimensionless", d, 1.0, h0, g)
    xs = np.arange(-4.0, 4.0 + 1e-9, 0.5)
    pick = np.rint((xs - b1.grid.start) / b1.grid.step).astype(int)
    header = ["x", "eta2_numeric", "eta2_closed", "eta3_numeric", "eta3_closed", "eta3_linear_depth", "eta3_dimensionless_reference"]
    cols = [b1.x[pick], rec.eta2.values[pick], e2(b1.x[pick]), rec.eta3.values[pick], e3(b1.x[pick]), e3_lin(b1.x[pick]), o3(b1.x[pick])]
    table = format_csv(header, cols)
    items = [("table", "solitary orders, zero vorticity, b1 = A sech^2(x)"), ("A", float(args.amplitude)), ("h0", float(h0)), ("g", float(g)), ("c", c)]
    _emit(args, {"compare.csv": table}, format_report("bedwave compare solitary", items) + "\n" + table)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _eps(text):
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"eps must lie in [0, 1], got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags given on the command line win")
    common.add_argument("--g", type=_positive, default=9.81, help="gravity (m/s^2)")
    common.add_argument("--out", default=".", help="output directory (default: current)")
    common.add_argument("--quiet", action="store_true", help="do not echo the report")

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument("--profile", choices=["zero", "constant", "poiseuille", "csv"], default="zero")
    prof.add_argument("--h0", type=_positive, help="undisturbed depth (m)")
    prof.add_argument("--gamma", type=float, default=0.0, help="shear rate for U = gamma*y")
    prof.add_argument("--profile-csv", help="tabulated current with header y,U")
    prof.add_argument("--n-steps", type=int, default=DEFAULT_STEPS, help="RK4 steps over the depth")

    p = argparse.ArgumentParser(prog="bedwave", description="Surface elevation of water waves from bed pressure.")
    p.add_argument("--version", action="version", version=f"bedwave {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dispersion", parents=[common, prof], help="linear wave speeds")
    s.add_argument("--k", type=_positive, default=1.0, help="wavenumber (1/m)")
    s.add_argument("--speed", choices=["bifurcation", "burns", "both"], default="both")
    s.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    s.set_defaults(func=cmd_dispersion)

    s = sub.add_parser("stokes", parents=[common, prof], help="periodic reconstruction")
    s.add_argument("trace", nargs="?", help="CSV x,p1[,p2] covering one period")
    s.add_argument("--k", type=_positive, help="wavenumber; checked against the trace period")
    s.add_argument("--order", type=int, choices=[1, 2], default=2)
    s.add_argument("--eps", type=_eps, default=1.0, help="amplitude parameter used to sum the orders")
    s.add_argument("--c", type=float, help="wave speed override (default: bifurcation speed)")
    s.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    s.add_argument("--workers", type=int, default=1, help="threads for the per-mode solves")
    s.add_argument("--coef-tol", type=float, default=1e-12, help="drop Fourier modes below this fraction of the largest")
    s.set_defaults(func=cmd_stokes)

    s = sub.add_parser("solitary", parents=[common, prof], help="solitary-wave reconstruction")
    s.add_argument("trace", nargs="?", help="CSV x,p1[,p2[,p3]] on a grid symmetric about 0")
    s.add_argument("--order", type=int, choices=[1, 2, 3], default=3)
    s.add_argument("--eps", type=_eps, default=1.0)
    s.add_argument("--c", type=float, help="wave speed override (default: Burns critical speed)")
    s.add_argument("--x-units", choices=["scaled", "physical"], default="scaled")
    s.add_argument("--decay-tol", type=float, default=1e-10)
    s.add_argument("--ny", type=int, default=DEFAULT_NY, help="depth nodes of the tensor grid")
    s.add_argument("--derivatives", help="CSV x,d1[,d2[,d3[,d4]]] with exact derivatives of p1")
    s.set_defaults(func=cmd_solitary)

    s = sub.add_parser("exact", parents=[common], help="exact zero-vorticity solve")
    s.add_argument("trace", nargs="?", help="CSV x,p1 covering one period")
    s.add_argument("--h0", type=_positive)
    s.add_argument("--k", type=_positive)
    s.add_argument("--c", type=float, help="wave speed override (default: linear dispersion relation)")
    s.add_argument("--tol", type=float, default=1e-13)
    s.add_argument("--max-iter", type=int, default=50)
    s.add_argument("--relaxation", type=float, default=1.0)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("compare", parents=[common], help="comparison tables against classical formulas")
    s.add_argument("which", nargs="?", choices=["stokes", "solitary"], default="stokes")
    s.add_argument("--b", type=float, default=0.1, help="bed pressure amplitude (stokes)")
    s.add_argument("--h0-list", default="1,0.4,0.2,0.1,0.05,0.025", help="depths for the stokes table")
    s.add_argument("--h0", type=_positive, help="depth for the solitary table (default 1)")
    s.add_argument("--amplitude", type=float, default=0.1, help="sech^2 amplitude (solitary)")
    s.set_defaults(func=cmd_compare)
    return p


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = load_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = next((a for a in argv if a in sub_action.choices), None)
    if command is None:
        return
    subparser = sub_action.choices[command]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in cfg.items():
        act = actions.get(key)
        if act is None or key in ("help", "config", "func"):
            raise BadConfig(f"{known.config}: unknown key {key!r} for '{command}'")
        try:
            if isinstance(act, argparse._StoreTrueAction):
                value = raw.lower() in ("1", "true", "yes", "on")
            elif act.nargs in (2, "+", "*"):
                value = [(act.type or str)(v) for v in raw.replace(",", " ").split()]
            else:
                value = (act.type or str)(raw)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise BadConfig(f"{known.config}: bad value for {key}: {exc}") from None
        if act.choices is not None and value not in act.choices:
            raise BadConfig(f"{known.config}: {key} must be one of {list(act.choices)}")
        defaults[key] = value
    subparser.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if getattr(args, "trace", "unused") is None:
            raise BadConfig(f"'{args.command}' needs a trace CSV")
        return args.func(args)
    except BedwaveError as exc:
        print(f"bedwave: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        # invalid parameters or unreadable files are input contract violations
        print(f"bedwave: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ContractViolation.exit_code


if __name__ == "__main__":
    sys.exit(main())
