"""Command-line interface: ``point``, ``sweep``, ``verify`` and ``reproduce``.

Units are hbar = k_B = 1: temperatures are energies, and frequencies and
energies share one unit.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 failed
verification. Settings are resolved as built-in defaults, then a JSON
file given with ``--config``, then explicit flags.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .energetics import CycleEnergetics, cycle_energetics, n_copy_energetics
from .errors import CLBatteryError
from .quadrature import QuadratureConfig
from .spectral import CutoffKind, SpectralDensity

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3

SWEEP_PARAMETERS = ("gamma", "omegac", "temp", "omega0", "n_copies")
ROW_COLUMNS = (
    "sigma11", "sigma22", "w_c", "w_d", "w_cd", "ergotropy", "eta",
    "t_sigma", "beta_p", "sum_rule_1_residual", "sum_rule_2_residual",
)
PHYSICS_KEYS = ("gamma", "omega0", "omegac", "temp", "cutoff", "n")

DEFAULTS = {
    "gamma": None,
    "omega0": 2.0,
    "omegac": 4.0,
    "temp": 0.1,
    "cutoff": "lorentz-drude",
    "n": 1,
    "rel_tol": 1e-10,
    "abs_tol": 1e-14,
    "jobs": 1,
    "json": False,
    "seed": 0,
    "parameter": None,
    "start": None,
    "stop": None,
    "points": None,
    "scale": "linear",
    "out": None,
    "tol": None,
    "figure": None,
    "out_dir": None,
    "temps": "0.1,0.5,1.0",
    "gammas": "5,10,15",
}


class UsageError(Exception):
    """Invalid command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _common_flags(parser):
    s = argparse.SUPPRESS
    parser.add_argument("--rel-tol", type=float, default=s, help="relative quadrature tolerance")
    parser.add_argument("--abs-tol", type=float, default=s, help="absolute quadrature tolerance")
    parser.add_argument("--jobs", type=int, default=s, help="parallel worker processes")
    parser.add_argument("--json", action="store_true", default=s, help="machine-readable output")
    parser.add_argument("--config", default=s, help="JSON file with default settings")
    parser.add_argument("--seed", type=_seed, default=s, help="seed for randomised checks")


def _physics_flags(parser):
    s = argparse.SUPPRESS
    parser.add_argument("--gamma", type=float, default=s, help="coupling strength")
    parser.add_argument("--omega0", type=float, default=s, help="oscillator frequency")
    parser.add_argument("--omegac", type=float, default=s, help="bath cutoff frequency")
    parser.add_argument("--temp", type=float, default=s, help="bath temperature")
    parser.add_argument("--cutoff", default=s, choices=("lorentz-drude", "exponential"))
    parser.add_argument("--n", type=int, default=s, help="number of batteries on the bath")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clbattery", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"clbattery {__version__}")
    _common_flags(parser)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    point = sub.add_parser("point", help="energetics at one parameter point")
    _common_flags(point)
    _physics_flags(point)

    sweep = sub.add_parser("sweep", help="energetics along one parameter, as CSV")
    _common_flags(sweep)
    _physics_flags(sweep)
    s = argparse.SUPPRESS
    sweep.add_argument("--parameter", choices=SWEEP_PARAMETERS, default=s)
    sweep.add_argument("--from", dest="start", type=float, default=s)
    sweep.add_argument("--to", dest="stop", type=float, default=s)
    sweep.add_argument("--points", type=int, default=s)
    sweep.add_argument("--scale", choices=("linear", "log"), default=s)
    sweep.add_argument("--out", default=s, help="output CSV path")

    verify = sub.add_parser("verify", help="run the invariant battery")
    _common_flags(verify)
    verify.add_argument("--tol", type=float, default=s, help="replace every check limit")

    repro = sub.add_parser("reproduce", help="curve data for the efficiency figures")
    _common_flags(repro)
    _physics_flags(repro)
    repro.add_argument("figure", choices=("fig1", "fig2"))
    repro.add_argument("--out-dir", default=s)
    repro.add_argument("--temps", default=s, help="comma-separated temperatures (fig1)")
    repro.add_argument("--gammas", default=s, help="comma-separated couplings (fig2)")
    repro.add_argument("--points", type=int, default=s)
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    """Merge defaults, the ``--config`` file and explicit flags."""
    settings = dict(DEFAULTS)
    given = vars(args)
    if "config" in given:
        try:
            with open(given["config"], encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {given['config']!r}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in loaded.items():
            norm = {"from": "start", "to": "stop"}.get(key, key.replace("-", "_"))
            if norm not in DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            settings[norm] = value
    for key, value in given.items():
        if key in ("config", "command"):
            continue
        settings[key] = value
    settings["command"] = given.get("command")
    return settings


def _quadrature(settings) -> QuadratureConfig:
    try:
        return QuadratureConfig(rel_tol=float(settings["rel_tol"]), abs_tol=float(settings["abs_tol"]))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _jobs(settings) -> int:
    jobs = settings["jobs"]
    if not isinstance(jobs, int) or jobs < 1:
        raise UsageError("--jobs must be a positive integer")
    return jobs


def _spectral(params) -> SpectralDensity:
    try:
        cutoff = CutoffKind.from_name(str(params["cutoff"]))
        return SpectralDensity(float(params["gamma"]), float(params["omega0"]),
                               float(params["omegac"]), cutoff)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, float)) or n != int(n) or n < 1:
        raise UsageError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _evaluate(params: dict, quad: tuple[float, float]) -> CycleEnergetics:
    config = QuadratureConfig(rel_tol=quad[0], abs_tol=quad[1])
    sd = _spectral(params)
    temp = float(params["temp"])
    if not temp >= 0:
        raise UsageError(f"temperature must be >= 0, got {temp}")
    n = _check_n(params["n"])
    if n == 1:
        return cycle_energetics(sd, temp, config)
    return n_copy_energetics(sd, n, temp, config)


def row_values(cyc: CycleEnergetics) -> list[float]:
    st = cyc.steady
    return [
        st.sigma11, st.sigma22, cyc.w_c, cyc.w_d, cyc.w_cd, cyc.ergotropy, cyc.efficiency,
        cyc.t_sigma, cyc.beta_p, st.sum_rule_1_residual, st.sum_rule_2_residual,
    ]


def _sweep_task(task):
    params, quad = task
    return row_values(_evaluate(params, quad))


def _format(value) -> str:
    return format(float(value), ".12g")


def _json_number(value):
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


# -- point ---------------------------------------------------------------

def cmd_point(settings) -> int:
    params = {k: settings[k] for k in PHYSICS_KEYS}
    if params["gamma"] is None:
        raise UsageError("--gamma is required")
    if float(params["gamma"]) == 0:
        raise UsageError("efficiency is undefined at zero coupling (gamma = 0); use gamma > 0")
    quad = _quadrature(settings)
    cyc = _evaluate(params, (quad.rel_tol, quad.abs_tol))
    st = cyc.steady
    energetics = {
        "w_c": cyc.w_c, "w_d": cyc.w_d, "w_cd": cyc.w_cd, "ergotropy": cyc.ergotropy,
        "eta": cyc.efficiency, "t_sigma": cyc.t_sigma, "beta_p": cyc.beta_p,
    }
    steady = {
        "sigma11": st.sigma11, "sigma22": st.sigma22, "sigma12": st.sigma12,
        "err11": st.err11, "err22": st.err22,
        "sum_rule_1_residual": st.sum_rule_1_residual,
        "sum_rule_2_residual": st.sum_rule_2_residual,
    }
    if settings["json"]:
        doc = {
            "parameters": params,
            "energetics": {k: _json_number(v) for k, v in energetics.items()},
            "steady": {k: _json_number(v) for k, v in steady.items()},
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    for key, value in params.items():
        print(f"{key:<20} {value}")
    print()
    for key, value in {**energetics, **steady}.items():
        print(f"{key:<20} {_format(value)}")
    return EXIT_OK


# -- sweep ---------------------------------------------------------------

def sweep_grid(start, stop, points, scale) -> np.ndarray:
    if points is None or int(points) != points or points < 2:
        raise UsageError("--points must be an integer >= 2")
    if start is None or stop is None:
        raise UsageError("--from and --to are required")
    if not start < stop:
        raise UsageError("--from must be smaller than --to")
    if scale == "log":
        if not start > 0:
            raise UsageError("log scale needs --from > 0")
        return np.geomspace(start, stop, int(points))
    if scale != "linear":
        raise UsageError(f"unknown scale {scale!r}")
    return np.linspace(start, stop, int(points))


def run_sweep(parameter, grid, fixed, quad: QuadratureConfig, jobs=1) -> list[list[float]]:
    """Evaluate ``fixed`` with ``parameter`` set to each grid value, in order."""
    key = "n" if parameter == "n_copies" else parameter
    tasks = []
    for value in grid:
        params = dict(fixed)
        params[key] = int(value) if key == "n" else float(value)
        tasks.append((params, (quad.rel_tol, quad.abs_tol)))
    if jobs <= 1:
        results = [_sweep_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    return [[float(v)] + r for v, r in zip(grid, results)]


def write_sweep_csv(path, parameter, rows, fixed, quad: QuadratureConfig, extra=None):
    """Write rows atomically; nothing is left behind if writing fails."""
    path = Path(path)
    swept = "n" if parameter == "n_copies" else parameter
    meta = {
        "tool": f"clbattery {__version__}",
        "units": "hbar = k_B = 1",
        "parameter": parameter,
        **{k: fixed[k] for k in PHYSICS_KEYS if k != swept},
        "rel_tol": quad.rel_tol,
        "abs_tol": quad.abs_tol,
        **(extra or {}),
    }
    lines = [f"# {k} = {v}" for k, v in meta.items()]
    lines.append(",".join((parameter,) + ROW_COLUMNS))
    lines.extend(",".join(_format(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_sweep_csv(path) -> tuple[dict, list[str], np.ndarray]:
    """Parse a sweep CSV into (metadata, header, rows)."""
    meta, header, rows = {}, None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


def cmd_sweep(settings) -> int:
    parameter = settings["parameter"]
    if parameter not in SWEEP_PARAMETERS:
        raise UsageError(f"--parameter must be one of {', '.join(SWEEP_PARAMETERS)}")
    if not settings["out"]:
        raise UsageError("--out is required")
    grid = sweep_grid(settings["start"], settings["stop"], settings["points"], settings["scale"])
    if parameter == "n_copies" and not np.all(grid == np.round(grid)):
        raise UsageError("n_copies sweep needs a grid of integers")
    fixed = {k: settings[k] for k in PHYSICS_KEYS}
    if parameter != "gamma" and fixed["gamma"] is None:
        raise UsageError("--gamma is required unless it is the swept parameter")
    if fixed["gamma"] is None:
        fixed["gamma"] = float(grid[0])
    quad = _quadrature(settings)
    rows = run_sweep(parameter, grid, fixed, quad, _jobs(settings))
    extra = {"scale": settings["scale"], "from": settings["start"], "to": settings["stop"],
             "points": settings["points"], "seed": settings["seed"]}
    write_sweep_csv(settings["out"], parameter, rows, fixed, quad, extra)
    if settings["json"]:
        print(json.dumps({"out": str(settings["out"]), "rows": len(rows)}))
    else:
        print(f"wrote {len(rows)} rows to {settings['out']}")
    return EXIT_OK


# -- verify --------------------------------------------------------------

def cmd_verify(settings) -> int:
    from .verification import run_checks

    as_json = settings["json"]

    def show(result):
        if not as_json:
            print(result.line(), flush=True)

    tol = settings["tol"]
    results = run_checks(int(settings["seed"]), _quadrature(settings),
                         None if tol is None else float(tol), show)
    ok = all(r.passed for r in results)
    if as_json:
        print(json.dumps({
            "seed": settings["seed"],
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "worst": r.worst, "limit": r.limit}
                       for r in results],
        }, indent=2))
    else:
        failed = [r.name for r in results if not r.passed]
        print("all checks passed" if ok else f"FAILED: {', '.join(failed)}")
    return EXIT_OK if ok else EXIT_VERIFY


# -- reproduce -----------------------------------------------------------

def _float_list(text, flag):
    if isinstance(text, (list, tuple)):
        items = text
    else:
        items = [t for t in str(text).split(",") if t.strip()]
    try:
        values = [float(t) for t in items]
    except ValueError as exc:
        raise UsageError(f"{flag} must be a comma-separated list of numbers") from exc
    if not values:
        raise UsageError(f"{flag} is empty")
    return values


def cmd_reproduce(settings) -> int:
    out_dir = settings["out_dir"]
    if not out_dir:
        raise UsageError("--out-dir is required")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    quad = _quadrature(settings)
    jobs = _jobs(settings)
    points = settings["points"] or 60
    base = {"cutoff": settings["cutoff"], "n": settings["n"]}
    written = []
    if settings["figure"] == "fig1":
        grid = sweep_grid(0.1, 20.0, points, "linear")
        for temp in _float_list(settings["temps"], "--temps"):
            fixed = {**base, "gamma": None, "omega0": 2.0, "omegac": 4.0, "temp": temp}
            rows = run_sweep("gamma", grid, fixed, quad, jobs)
            path = out / f"fig1_T{temp:g}.csv"
            write_sweep_csv(path, "gamma", rows, fixed, quad, {"figure": "fig1"})
            written.append(path)
    else:
        grid = sweep_grid(0.05, 4.0, points, "log")
        for gamma in _float_list(settings["gammas"], "--gammas"):
            fixed = {**base, "gamma": gamma, "omega0": 2.0, "omegac": None, "temp": 0.1}
            rows = run_sweep("omegac", grid, fixed, quad, jobs)
            path = out / f"fig2_gamma{gamma:g}.csv"
            write_sweep_csv(path, "omegac", rows, fixed, quad, {"figure": "fig2"})
            written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "verify": cmd_verify, "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        settings = resolve_settings(args)
        return COMMANDS[args.command](settings)
    except UsageError as exc:
        print(f"clbattery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CLBatteryError as exc:
        if isinstance(exc, ValueError):
            print(f"clbattery: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"clbattery: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"clbattery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
