"""Batch front end: run named experiments from JSON configs.

`schreg <command> --config <file> [--jobs N] [--out DIR]` validates the
config against the packaged JSON schema (unknown fields rejected), runs the
computation, and leaves CSV/JSON artifacts plus a manifest.json that lists
every emitted file with its sha256.  Outputs are byte-reproducible for a
fixed config: floats are serialized with 17 significant digits, CSV rows
are merged by index regardless of worker completion order, and JSON keys
are sorted.

Exit codes: 0 success, 1 compute failure (partial manifest with an error
record), 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import jsonschema
import numpy as np

from . import martin, periodic, potentials, propagation, regularity
from .errors import ConfigInvalid, NotBracketed

__all__ = ["run", "main", "load_schema"]

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2

COMMANDS = ("solve", "bands", "martin", "dos", "regularity")

_NEEDS_POTENTIAL = {"solve", "bands", "dos", "regularity"}
_NEEDS_SPECTRUM = {"martin", "dos", "regularity"}


# ---------------------------------------------------------------------------
# deterministic serialization


def _float_17g(value):
    if value != value:
        return "NaN"
    if value == float("inf"):
        return "Infinity"
    if value == float("-inf"):
        return "-Infinity"
    return format(value, ".17g")


def _dumps(obj):
    """JSON text with sorted keys and 17-significant-digit floats."""
    try:
        encode = json.encoder._make_iterencode(
            {}, None, json.encoder.encode_basestring_ascii, "  ",
            _float_17g, ": ", ",", True, False, False)
        return "".join(encode(obj, 0))
    except AttributeError:  # private helper gone: fall back to repr floats
        return json.dumps(obj, sort_keys=True, indent=2)


def _cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _float_17g(float(value))


class _OutputDir:
    """Collects artifacts in a directory and records their hashes."""

    def __init__(self, path):
        self.path = path
        os.makedirs(path, exist_ok=True)
        self.records = []

    def _store(self, name, data):
        with open(os.path.join(self.path, name), "wb") as fh:
            fh.write(data)
        self.records.append({"name": name,
                             "sha256": hashlib.sha256(data).hexdigest(),
                             "bytes": len(data)})

    def write_json(self, name, obj):
        self._store(name, (_dumps(obj) + "\n").encode("utf-8"))

    def write_csv(self, name, header, rows):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        self._store(name, buf.getvalue().encode("utf-8"))

    def write_manifest(self, config, status, error=None):
        manifest = {
            "command": config.get("command"),
            "seed": int(config.get("seed", 0)),
            "status": status,
            "files": sorted(self.records, key=lambda r: r["name"]),
        }
        if error is not None:
            manifest["error"] = error
        with open(os.path.join(self.path, "manifest.json"), "wb") as fh:
            fh.write((_dumps(manifest) + "\n").encode("utf-8"))


# ---------------------------------------------------------------------------
# config validation


def load_schema(name):
    """Load a packaged schema; the config schema gets the potential spec
    injected into its $defs so a single validator covers both files."""
    root = resources.files("schreg") / "schemas"
    schema = json.loads((root / name).read_text(encoding="utf-8"))
    if name == "experiment_config.schema.json":
        pot = json.loads((root / "potential_spec.schema.json")
                         .read_text(encoding="utf-8"))
        pot.pop("$schema", None)
        schema["$defs"]["potential_spec"] = pot
    return schema


def _validate_config(config):
    if not isinstance(config, dict):
        raise ConfigInvalid("config must be a JSON object")
    schema = load_schema("experiment_config.schema.json")
    try:
        jsonschema.validate(config, schema)
    except jsonschema.ValidationError as exc:
        raise ConfigInvalid(f"config rejected by schema: {exc.message}") from exc
    command = config["command"]
    params = config.get("params", {})
    sub = dict(schema["$defs"][f"params_{command}"])
    sub["$defs"] = schema["$defs"]
    try:
        jsonschema.validate(params, sub)
    except jsonschema.ValidationError as exc:
        raise ConfigInvalid(
            f"params rejected for command {command!r}: {exc.message}") from exc
    if command in _NEEDS_POTENTIAL and "potential" not in config:
        raise ConfigInvalid(f"command {command!r} requires a potential")
    if command in _NEEDS_SPECTRUM and "spectrum" not in config:
        raise ConfigInvalid(f"command {command!r} requires a spectrum")
    try:
        if "potential" in config:
            potentials.from_json(config["potential"])
        if "spectrum" in config:
            martin.GapSet.from_json(config["spectrum"])
    except (ValueError, TypeError) as exc:
        raise ConfigInvalid(str(exc)) from exc
    return config


def _zlist(pairs):
    return [complex(zr, zi) for zr, zi in pairs]


def _pmap(jobs, fn, items):
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # order-preserving merge


# ---------------------------------------------------------------------------
# commands


def _cmd_solve(config, out, jobs):
    p = potentials.from_json(config["potential"])
    params = config["params"]
    step = params.get("step", 1e-3)
    zs = _zlist(params["z_grid"])
    xs = sorted(float(x) for x in params["x_grid"])

    def one(z):
        rows = []
        for x in xs:
            s = propagation.dirichlet_solution(p, x, z, step=step)
            h = propagation.log_growth(p, x, z, step=step)
            rows.append((z.real, z.imag, x, s.u.real, s.u.imag,
                         s.du.real, s.du.imag, s.log_scale, h))
        return rows

    blocks = _pmap(jobs, one, zs)
    out.write_csv("solve.csv",
                  ["z_re", "z_im", "x", "u_re", "u_im", "du_re", "du_im",
                   "log_scale", "h"],
                  [row for block in blocks for row in block])


def _cmd_bands(config, out, jobs):
    p = potentials.from_json(config["potential"])
    params = config["params"]
    step = params.get("step", 1e-3)
    bs = periodic.band_spectrum(
        p, params["period"], tuple(params["lambda_window"]),
        params.get("resolution", 512), step=step,
        edge_tol=params.get("edge_tol", 1e-10))
    try:
        lowest = periodic.lowest_periodic_eigenvalue(
            p, params["period"], tuple(params["lambda_window"]), step=step)
    except NotBracketed:
        lowest = None
    out.write_json("bands.json", {
        "period": bs.period,
        "bands": [list(b) for b in bs.bands],
        "gap_set": periodic.to_gap_set(bs).to_json(),
        "lowest_eigenvalue": lowest,
    })
    out.write_csv("bands.csv", ["lambda", "delta"],
                  list(zip(bs.lam.tolist(), bs.delta.tolist())))


def _cmd_martin(config, out, jobs):
    E = martin.GapSet.from_json(config["spectrum"])
    params = config["params"]
    cp = martin.solve_critical_points(E)
    zs = _zlist(params["z_grid"])

    def one(z):
        ev = martin.martin_function(E, cp.c, z)
        return (z.real, z.imag, ev.value, ev.theta_real)

    rows = _pmap(jobs, one, zs)
    summary = {
        "b0": E.b0,
        "gaps": [list(g) for g in E.gaps],
        "critical_points": list(cp.c),
        "residuals": list(cp.residuals),
        "a_constant": martin.a_constant(E, cp.c),
    }
    if params.get("fit"):
        summary["fit_a"] = martin.fit_a_from_martin(
            E, cp.c, np.linspace(50.0, 100.0, 12))
    out.write_json("critical_points.json", summary)
    out.write_csv("martin.csv", ["z_re", "z_im", "m", "theta_real"], rows)


def _cmd_dos(config, out, jobs):
    p = potentials.from_json(config["potential"])
    E = martin.GapSet.from_json(config["spectrum"])
    params = config["params"]
    d = regularity.dos_comparison(
        p, E, params["x"], tuple(params["lambda_window"]),
        grid=params.get("grid_points", 200), step=params.get("step", 0.02))
    out.write_json("dos.json", {
        "x": params["x"],
        "lambda_window": list(params["lambda_window"]),
        "distance": d.distance,
    })
    out.write_csv("dos.csv", ["lambda", "rho_x", "rho_e"],
                  list(zip(d.lam.tolist(), d.rho_x.tolist(), d.rho_e.tolist())))


def _cmd_regularity(config, out, jobs):
    p = potentials.from_json(config["potential"])
    E = martin.GapSet.from_json(config["spectrum"])
    cfg = regularity.ReportConfig.from_json(config.get("params", {}))
    report = regularity.regularity_report(p, E, cfg)
    out.write_json("report.json", report.to_json())
    out.write_csv("cesaro.csv", ["x", "average"],
                  list(zip(report.cesaro_x.tolist(),
                           report.cesaro_average.tolist())))
    growth_rows = []
    for i, z in enumerate(report.growth_z):
        for j, x in enumerate(report.growth_x):
            growth_rows.append((z.real, z.imag, float(x),
                                float(report.growth_h[i, j]),
                                float(report.growth_m[i])))
    out.write_csv("growth.csv", ["z_re", "z_im", "x", "h", "m"], growth_rows)
    out.write_csv("dos.csv", ["lambda", "rho_x", "rho_e"],
                  list(zip(report.dos_lambda.tolist(),
                           report.dos_rho_x.tolist(),
                           report.dos_rho_e.tolist())))


_DISPATCH = {
    "solve": _cmd_solve,
    "bands": _cmd_bands,
    "martin": _cmd_martin,
    "dos": _cmd_dos,
    "regularity": _cmd_regularity,
}


# ---------------------------------------------------------------------------
# entry points


def run(config, out_dir=None, jobs=1):
    """Validate and execute one experiment config; returns the exit code."""
    try:
        config = _validate_config(config)
    except ConfigInvalid as exc:
        print(f"schreg: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = _OutputDir(out_dir or config.get("output_dir", "."))
    out.write_json("config.json", config)
    try:
        _DISPATCH[config["command"]](config, out, max(1, int(jobs)))
    except Exception as exc:
        out.write_manifest(config, "error",
                           error={"type": type(exc).__name__,
                                  "message": str(exc)})
        print(f"schreg: compute failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    out.write_manifest(config, "ok")
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="schreg",
        description="Half-line Schrodinger spectral experiments from JSON "
                    "configs; emits CSV/JSON artifacts with a hash manifest.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True,
                        help="path to the experiment config JSON")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker fan-out (default: SCHREG_JOBS or 1)")
    parser.add_argument("--out", default=None,
                        help="output directory (overrides config output_dir)")
    args = parser.parse_args(argv)
    if args.jobs is not None:
        jobs = args.jobs
    else:
        try:
            jobs = int(os.environ.get("SCHREG_JOBS", "1"))
        except ValueError:
            jobs = 1
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"schreg: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if config.get("command") != args.command:
        print(f"schreg: config command {config.get('command')!r} does not "
              f"match CLI command {args.command!r}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config, out_dir=args.out, jobs=jobs)


if __name__ == "__main__":
    sys.exit(main())
