"""``wgwalk`` command line: run or sweep JSON experiment configs.

Exit status is 0 on success, 2 for configuration errors (including domain
preconditions traced back to a config key), 3 for output failures and 1
for anything else. Errors are reported on stderr as one JSON object.
"""
import argparse
import concurrent.futures
import json
import os
import sys

import numpy as np

from . import config as cfgmod
from .errors import (ConfigError, DegenerateInputError, GeometryError, MultiModeError,
                     NoSolutionError, NonUnitaryCoinError, OutputError, ScaleError, WgwalkError)
from .experiments import prepare

THREADS_ENV = "WGWALK_THREADS"

# domain errors -> config key most likely responsible
_ERROR_KEYS = {
    MultiModeError: "waveguide",
    NoSolutionError: "waveguide",
    GeometryError: "geometry",
    ScaleError: "walk.depth",
    NonUnitaryCoinError: "walk.r",
    DegenerateInputError: "correlations.inputs",
}


def build_config(path, overrides=()):
    raw = cfgmod.load(path)
    for text in overrides:
        key, value = cfgmod.parse_override(text)
        raw = cfgmod.apply_override(raw, key, value)
    return cfgmod.validate(raw)


def execute(cfg, out_dir):
    """Compute and write one experiment; domain errors become :class:`ConfigError`."""
    try:
        art = prepare(cfg)
    except ConfigError:
        raise
    except WgwalkError as exc:
        key = next((k for cls, k in _ERROR_KEYS.items() if isinstance(exc, cls)), "<config>")
        raise ConfigError(key, f"{type(exc).__name__}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError("<config>", str(exc)) from exc
    return art.write(out_dir)


def parse_grid(text):
    """``key=start:stop:n`` -> (key, values)."""
    if "=" not in text:
        raise ConfigError("--grid", "expected key=start:stop:n")
    key, spec = text.split("=", 1)
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError("--grid", "expected key=start:stop:n")
    try:
        start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError("--grid", str(exc)) from None
    if n < 1:
        raise ConfigError("--grid", "n must be at least 1")
    values = np.linspace(start, stop, n)
    if all(float(v).is_integer() for v in values) and all(p.lstrip("-").isdigit() for p in parts[:2]):
        return key.strip(), [int(v) for v in values]
    return key.strip(), [float(v) for v in values]


def _thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(THREADS_ENV, f"expected an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(THREADS_ENV, "must be at least 1")
    return n


def sweep(path, grid, overrides, out_dir):
    key, values = parse_grid(grid)
    configs = []
    for v in values:
        cfg = build_config(path, list(overrides) + [f"{key}={json.dumps(v)}"])
        configs.append((os.path.join(out_dir, f"{key}={v!r}"), cfg))
    written = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        for files in pool.map(lambda job: execute(job[1], job[0]), configs):
            written.extend(files)
    return written


def _report(exc):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ConfigError):
        payload.update(key=exc.key, message=exc.message)
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def make_parser():
    parser = argparse.ArgumentParser(prog="wgwalk",
                                     description="Waveguide-array quantum walk simulations.")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run one experiment config")
    sweep_p = sub.add_parser("sweep", help="run a config over a 1-D parameter grid")
    for p in (run_p, sweep_p):
        p.add_argument("config", help="JSON experiment config")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override a config entry by dotted path")
        p.add_argument("--out", default=".", help="output directory (default: current)")
    sweep_p.add_argument("--grid", required=True, metavar="KEY=START:STOP:N",
                         help="dotted key and evenly spaced values")
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        if args.command == "run":
            files = execute(build_config(args.config, args.overrides), args.out)
        else:
            files = sweep(args.config, args.grid, args.overrides, args.out)
    except ConfigError as exc:
        _report(exc)
        return 2
    except OutputError as exc:
        _report(exc)
        return 3
    except Exception as exc:  # noqa: BLE001 - reported as structured error
        _report(exc)
        return 1
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
