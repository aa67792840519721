"""Command-line front end.

    ahgeom solve      write the sampled coefficient profile as CSV/JSON
    ahgeom curvature  tabulate curvature values and hyper-Kaehler residuals
    ahgeom verify     run the full verification suite, emit a JSON report

Flags may also come from a key=value config file (--config); command-line
flags win over the file, the file wins over defaults.  Exit codes: 0 ok,
1 verification failure, 2 usage error, 3 numerical failure.  Output for a
fixed config and seed is byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import sys

from .config import RunConfig
from .curvature import (asd_residual, curvature_components,
                        fiber_gauss_curvature, kappa_at_zero)
from .ode import IntegrationError, integrate, shape_point
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

SOLVE_COLUMNS = ("r", "a", "b", "c", "da", "db", "dc", "dda", "ddb", "ddc", "x", "y")
CURV_COLUMNS = ("r", "k1", "k2", "k3", "asd1", "asd2", "asd3", "Kfiber")


def _fmt(x: float) -> str:
    # full-precision scientific/shortest form; outputs double as fixtures
    return f"{x:.17g}"


def _write_text(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as f:
            f.write(text)


def _table_text(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    payload = {
        "columns": list(columns),
        "rows": [[v for v in row] for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def _solve_grid(config: RunConfig):
    r_max = config.params().r_max
    n = config.grid_points
    return [r_max * i / (n - 1) for i in range(n)]


def cmd_solve(config: RunConfig) -> int:
    profile = integrate(config.params())
    rows = []
    for r in _solve_grid(config):
        s = profile.at(r)
        sp = shape_point(s)
        rows.append((s.r, s.a, s.b, s.c, s.da, s.db, s.dc,
                     s.dda, s.ddb, s.ddc, sp.x, sp.y))
    if config.fmt == "csv":
        text = _table_text(SOLVE_COLUMNS, rows, "csv")
    else:
        payload = {
            "params": {"m": profile.params.m, "r_max": profile.params.r_max,
                       "tol": profile.params.tol,
                       "grid_points": config.grid_points},
            "samples": [dict(zip(SOLVE_COLUMNS, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _write_text(text, config.output)
    return EXIT_OK


def cmd_curvature(config: RunConfig) -> int:
    params = config.params()
    profile = integrate(params)
    rows = []
    for r in _solve_grid(config):
        if r == 0.0:
            k0 = kappa_at_zero(params.m)
            # the anti-self-duality residuals extend continuously to 0 at r=0
            rows.append((0.0, k0.k1, k0.k2, k0.k3, 0.0, 0.0, 0.0,
                         1.5 / params.m ** 2))
            continue
        s = profile.at(r)
        k = curvature_components(s)
        e1, e2, e3 = asd_residual(s)
        rows.append((s.r, k.k1, k.k2, k.k3, e1, e2, e3,
                     fiber_gauss_curvature(s)))
    _write_text(_table_text(CURV_COLUMNS, rows, config.fmt), config.output)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = run_verification(config)
    for c in report.checks:
        state = "PASS" if c.passed else "FAIL"
        print(f"{state} {c.name}: worst={c.worst:.3e} "
              f"({c.direction} {c.budget:g}); {c.note}", file=sys.stderr)
    _write_text(json.dumps(report.to_dict(), indent=2) + "\n", config.output)
    if not report.all_pass:
        first = report.first_failure
        print(f"verification failed: {first.name}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path) as f:
        for raw in f:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (want key=value): {raw!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


_FLAG_TYPES = {
    "m": float,
    "r_max": float,
    "tol": float,
    "grid": int,
    "seed": int,
    "format": str,
    "output": str,
}


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config is not None:
        for key, raw in _read_config_file(args.config).items():
            if key not in _FLAG_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = _FLAG_TYPES[key](raw)
    for key in _FLAG_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return RunConfig(
        m=values.get("m", 1.0),
        r_max=values.get("r_max"),
        tol=values.get("tol", 1e-10),
        grid_points=values.get("grid", 1000),
        seed=values.get("seed"),
        fmt=values.get("format", "csv"),
        output=values.get("output"),
    )


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--m", type=float, help="zero-section sphere radius (default 1)")
    p.add_argument("--r-max", dest="r_max", type=float,
                   help="integration horizon (default 20*m)")
    p.add_argument("--tol", type=float, help="integrator tolerance (default 1e-10)")
    p.add_argument("--grid", type=int, help="grid points (default 1000)")
    p.add_argument("--seed", type=int, help="RNG seed for the k-plane search")
    p.add_argument("--format", choices=("csv", "json"), help="output format")
    p.add_argument("--output", help="output path (default stdout)")
    p.add_argument("--config", help="key=value file mirroring the flags")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ahgeom",
        description="Construct the Atiyah-Hitchin coefficient profile and "
                    "verify the geometry of its minimal sphere.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
            ("solve", "integrate and export the coefficient profile"),
            ("verify", "run every verification check; JSON report"),
            ("curvature", "tabulate curvature and hyper-Kaehler residuals")):
        _add_common(sub.add_parser(name, help=helptext))
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
    except (ValueError, OSError) as exc:
        print(f"ahgeom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "solve":
            return cmd_solve(config)
        if args.command == "verify":
            return cmd_verify(config)
        return cmd_curvature(config)
    except IntegrationError as exc:
        print(f"ahgeom: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"ahgeom: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
