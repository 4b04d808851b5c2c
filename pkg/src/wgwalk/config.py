"""Experiment configuration: JSON loading, dotted overrides and validation.

A config is a JSON object with an ``experiment`` kind plus the sections
that kind reads. Missing keys take their defaults; unknown keys and
sections not read by the kind are rejected. Validation errors name the
offending key as a dotted path.
"""
import copy
import json
import math
import numbers

from .errors import ConfigError
from .optics import SINGLE_MODE_CUTOFF, WaveguideSpec

KINDS = ("dispersion", "couple2", "planar", "tube", "fanin", "ctqw", "coined", "scattering",
         "gluedtree", "correlations")


def _num(lo=None, hi=None, lo_open=True):
    def check(key, v):
        if isinstance(v, bool) or not isinstance(v, numbers.Real):
            raise ConfigError(key, f"expected a number, got {v!r}")
        if lo is not None and (v <= lo if lo_open else v < lo):
            raise ConfigError(key, f"must be {'>' if lo_open else '>='} {lo}, got {v}")
        if hi is not None and v > hi:
            raise ConfigError(key, f"must be <= {hi}, got {v}")
        return float(v)
    return check


def _int(lo=None, hi=None):
    def check(key, v):
        if isinstance(v, bool) or not isinstance(v, numbers.Integral):
            if isinstance(v, float) and v.is_integer():
                v = int(v)
            else:
                raise ConfigError(key, f"expected an integer, got {v!r}")
        if lo is not None and v < lo:
            raise ConfigError(key, f"must be >= {lo}, got {v}")
        if hi is not None and v > hi:
            raise ConfigError(key, f"must be <= {hi}, got {v}")
        return int(v)
    return check


def _choice(*options):
    def check(key, v):
        if v not in options:
            raise ConfigError(key, f"expected one of {list(options)}, got {v!r}")
        return v
    return check


def _bool(key, v):
    if not isinstance(v, bool):
        raise ConfigError(key, f"expected true or false, got {v!r}")
    return v


def _optional(check):
    def wrapped(key, v):
        return None if v is None else check(key, v)
    return wrapped


def _list_of(check, min_len=1, length=None):
    def wrapped(key, v):
        if not isinstance(v, list):
            raise ConfigError(key, f"expected a list, got {v!r}")
        if length is not None and len(v) != length:
            raise ConfigError(key, f"expected {length} entries, got {len(v)}")
        if len(v) < min_len:
            raise ConfigError(key, f"expected at least {min_len} entries")
        return [check(f"{key}[{i}]", x) for i, x in enumerate(v)]
    return wrapped


def _complex(key, v):
    if isinstance(v, list):
        if len(v) != 2:
            raise ConfigError(key, "complex values are [real, imag]")
        re, im = (_num()(f"{key}[{i}]", x) for i, x in enumerate(v))
        return complex(re, im)
    return complex(_num()(key, v))


def _name(key, v):
    if not isinstance(v, str) or not v or any(c in v for c in "/\\") or v.startswith("."):
        raise ConfigError(key, f"expected a plain file-name prefix, got {v!r}")
    return v


# section -> key -> (default, validator)
SCHEMA = {
    "waveguide": {
        "core_radius": (1.486, _num(0)),
        "n_clad": (1.4533, _num(1)),
        "contrast": (0.00455, _num(0)),
        "n_core": (None, _optional(_num(1))),
        "wavelength": (0.80, _num(0)),
    },
    "geometry": {
        "layout": ("planar", _choice("planar", "tube", "coupler")),
        "separation": (10.0, _num(0)),
        "separations": ([6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0, 13.0, 14.0], _list_of(_num(0))),
        "n_guides": (6, _int(2, 200)),
        "pitch": (10.0, _num(0)),
        "include_nnn": (False, _bool),
        "tube_radius": (7.0, _num(0)),
        "neighbour_orders": (2, _int(1)),
        "stages": (2, _int(1, 2)),
        "start_pitch": (127.0, _num(0)),
        "intermediate_radius": (14.0, _num(0)),
        "stage_length": (8000.0, _num(0)),
        "z_samples": (None, _optional(_int(2, 200_001))),
    },
    "evolution": {
        "z_end": (20000.0, _num(0)),
        "z_steps": (400, _int(1, 1_000_000)),
        "launch": (0, _int(0)),
        "method": ("expm", _choice("expm", "ode", "circulant")),
        "recurrence_threshold": (0.9, _num(0, 1.0, lo_open=False)),
    },
    "walk": {
        "graph": ("ring", _choice("ring", "line", "glued_tree")),
        "size": (3, _int(1)),
        "gamma": (1.0, _num(0)),
        "start": (0, _int(0)),
        "t_end": (10.0, _num(0)),
        "t_steps": (200, _int(1, 1_000_000)),
        "steps": (32, _int(1, 2000)),
        "initial": ("symmetric", _choice("symmetric", "up", "down")),
        "direction": ("right", _choice("right", "left")),
        "r": (0.7071067811865476, _complex),
        "t": (0.7071067811865476, _complex),
        "depth": (4, _int(1)),
        "t_max": (10.0, _num(0)),
        "samples": (201, _int(2, 100_000)),
        "walkers": (100_000, _int(1, 10_000_000)),
    },
    "correlations": {
        "inputs": ([0, 1], _list_of(_int(0), length=2)),
        "kinds": (["distinguishable", "indistinguishable", "classical"],
                  _list_of(_choice("distinguishable", "indistinguishable", "entangled",
                                   "classical"))),
        "phase": (0.0, _num()),
        "n_phases": (0, _int(0)),
    },
    "output": {
        "prefix": (None, _optional(_name)),
        "heatmap": (True, _bool),
        "colormap": ("gray", _choice("gray", "viridis")),
        "cell": (16, _int(1, 256)),
    },
}

SECTIONS = {
    "dispersion": ("waveguide", "geometry"),
    "couple2": ("waveguide", "geometry", "evolution"),
    "planar": ("waveguide", "geometry", "evolution"),
    "tube": ("waveguide", "geometry", "evolution"),
    "fanin": ("waveguide", "geometry", "evolution"),
    "ctqw": ("walk",),
    "coined": ("walk",),
    "scattering": ("walk",),
    "gluedtree": ("walk",),
    "correlations": ("waveguide", "geometry", "evolution", "correlations"),
}

TOP_LEVEL = ("experiment", "seed", "output") + tuple(SCHEMA)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read config: {exc}") from exc


def parse_override(text):
    """``"a.b=value"`` -> ``("a.b", value)``; value parsed as JSON when possible."""
    if "=" not in text:
        raise ConfigError(text, "override must look like key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def apply_override(raw, key, value):
    out = copy.deepcopy(raw)
    parts = key.split(".")
    node = out
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigError(key, f"{p} is not a section")
    node[parts[-1]] = value
    return out


def validate(raw):
    """Return a fully populated config dict or raise :class:`ConfigError`."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    for key in raw:
        if key not in TOP_LEVEL:
            raise ConfigError(key, "unknown key")
    kind = raw.get("experiment")
    if kind is None:
        raise ConfigError("experiment", "missing experiment kind")
    if kind not in KINDS:
        raise ConfigError("experiment", f"expected one of {list(KINDS)}, got {kind!r}")
    allowed = SECTIONS[kind] + ("output",)
    for section in SCHEMA:
        if section in raw and section not in allowed:
            raise ConfigError(section, f"section not used by experiment {kind!r}")

    cfg = {"experiment": kind}
    seed = raw.get("seed", 0)
    cfg["seed"] = _int(0, 2 ** 63 - 1)("seed", seed)
    for section in allowed:
        given = raw.get(section, {})
        if not isinstance(given, dict):
            raise ConfigError(section, "section must be an object")
        fields = SCHEMA[section]
        for key in given:
            if key not in fields:
                raise ConfigError(f"{section}.{key}", "unknown key")
        cfg[section] = {
            key: check(f"{section}.{key}", given.get(key, default))
            for key, (default, check) in fields.items()
        }
    if cfg["output"]["prefix"] is None:
        cfg["output"]["prefix"] = kind
    _cross_checks(cfg)
    return cfg


def _cross_checks(cfg):
    wg = cfg.get("waveguide")
    if wg is not None:
        n_core = wg["n_core"] if wg["n_core"] is not None else wg["n_clad"] + wg["contrast"]
        if not n_core > wg["n_clad"]:
            raise ConfigError("waveguide.n_core", "must exceed waveguide.n_clad")
    walk = cfg.get("walk")
    if walk is not None and cfg["experiment"] == "ctqw":
        graph, size = walk["graph"], walk["size"]
        if graph == "ring" and size < 3:
            raise ConfigError("walk.size", "a ring needs at least 3 vertices")
        if graph == "glued_tree" and size > 8:
            raise ConfigError("walk.size", "glued trees are limited to depth 8")
    if walk is not None and cfg["experiment"] == "gluedtree" and walk["depth"] > 8:
        raise ConfigError("walk.depth", "glued trees are limited to depth 8")
    geom = cfg.get("geometry")
    if geom is not None and cfg["experiment"] in ("tube", "fanin") and geom["n_guides"] < 3:
        raise ConfigError("geometry.n_guides", "a tube needs at least 3 guides")
    corr = cfg.get("correlations")
    if corr is not None:
        if corr["n_phases"] and corr["n_phases"] < 8:
            raise ConfigError("correlations.n_phases", "must be 0 (closed form) or at least 8")
        n = 2 if cfg["geometry"]["layout"] == "coupler" else cfg["geometry"]["n_guides"]
        for i, g in enumerate(corr["inputs"]):
            if g >= n:
                raise ConfigError(f"correlations.inputs[{i}]", f"guide {g} outside 0..{n - 1}")
        if "entangled" in corr["kinds"] and corr["inputs"][0] == corr["inputs"][1]:
            raise ConfigError("correlations.inputs", "entangled input needs two distinct guides")
    if wg is not None:
        _physical_checks(cfg)
    evo = cfg.get("evolution")
    if evo is not None and geom is not None:
        n = {"couple2": 2}.get(cfg["experiment"], geom["n_guides"])
        if cfg["experiment"] != "correlations" and evo["launch"] >= n:
            raise ConfigError("evolution.launch", f"guide {evo['launch']} outside 0..{n - 1}")


def _physical_checks(cfg):
    """Domain preconditions traced back to the key that sets them."""
    wg, geom, kind = cfg["waveguide"], cfg["geometry"], cfg["experiment"]
    spec = waveguide_spec(wg)
    if spec.v_number >= SINGLE_MODE_CUTOFF:
        key = "waveguide.n_core" if wg["n_core"] is not None else "waveguide.contrast"
        raise ConfigError(key, f"V = {spec.v_number:.4f} >= {SINGLE_MODE_CUTOFF}; "
                               "guide is not single-mode")
    min_sep = 2 * spec.core_radius
    layout = {"couple2": "coupler", "planar": "planar", "tube": "tube",
              "fanin": "tube"}.get(kind, geom["layout"])
    if kind == "dispersion":
        checks = [(f"geometry.separations[{i}]", d) for i, d in enumerate(geom["separations"])]
    elif layout == "coupler":
        checks = [("geometry.separation", geom["separation"])]
    elif layout == "planar":
        checks = [("geometry.pitch", geom["pitch"])]
    else:
        n, radius = geom["n_guides"], geom["tube_radius"]
        checks = [("geometry.tube_radius", 2 * radius * math.sin(math.pi / n))]
        if kind == "fanin" and geom["stages"] == 2:
            if not geom["intermediate_radius"] > radius:
                raise ConfigError("geometry.intermediate_radius",
                                  "must exceed geometry.tube_radius")
    for key, d in checks:
        if d < min_sep:
            raise ConfigError(key, f"centre separation {d:.4g} um is below the core "
                                   f"diameter {min_sep:.4g} um")


def waveguide_spec(section):
    n_core = section["n_core"]
    if n_core is None:
        n_core = section["n_clad"] + section["contrast"]
    return WaveguideSpec(core_radius=section["core_radius"], n_core=n_core,
                         n_clad=section["n_clad"], wavelength=section["wavelength"])
