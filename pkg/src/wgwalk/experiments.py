"""Experiment runners behind the command-line interface.

Each runner takes a validated config and returns a list of artifacts
``(file_name, writer)`` without touching the file system, so a failing
run leaves no partial output.
"""
import json
import os

import numpy as np

from . import config as cfgmod
from .correlations import CORRELATORS
from .errors import ConfigError, DegenerateFitError
from .evolution import (AmplitudeState, PropagationRecord, circulant_oracle, evolve_ode,
                        find_recurrence, nnnc_ratio, record_expm, transfer_matrix)
from .geometry import (FanInPath, TubeGeometry, build_planar, build_tube,
                       fanin_coupling_profile)
from .optics import (CouplingFit, coupling_coefficient, coupling_length_cmt,
                     coupling_length_empirical, solve_dispersion)
from .output import emit_csv, emit_heatmap, emit_matrix_csv, emit_record_csv
from .walks import (CoinedState, GraphSpec, ScatteringState, build_ctqw, coined_step,
                    glued_tree_traversal, position_variance, propagate, scattering_step,
                    variance_exponent)


class Artifacts:
    """Ordered collection of pending output files."""

    def __init__(self, prefix):
        self.prefix = prefix
        self.items = []
        self.summary = {}

    def csv(self, suffix, header, rows):
        self.items.append((f"{self.prefix}_{suffix}.csv",
                           lambda p: emit_csv(p, header, rows)))

    def matrix(self, suffix, m):
        self.items.append((f"{self.prefix}_{suffix}.csv", lambda p: emit_matrix_csv(p, m)))

    def record(self, suffix, rec):
        self.items.append((f"{self.prefix}_{suffix}.csv", lambda p: emit_record_csv(p, rec)))

    def heatmap(self, suffix, m, colormap, cell):
        self.items.append((f"{self.prefix}_{suffix}.ppm",
                           lambda p: emit_heatmap(p, m, colormap, cell)))

    def write(self, out_dir):
        if self.summary:
            text = json.dumps(self.summary, sort_keys=True, indent=2) + "\n"
            self.items.append((f"{self.prefix}_summary.json", lambda p: _write_text(p, text)))
        os.makedirs(out_dir, exist_ok=True)
        written = []
        try:
            for name, writer in self.items:
                path = os.path.join(out_dir, name)
                writer(path)
                written.append(path)
        except Exception:
            for path in written:
                os.remove(path)
            raise
        return written


def _write_text(path, text):
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def _recurrence(rec, launch, threshold):
    found = find_recurrence(rec, launch, threshold)
    if found is None:
        return {"recurrence_z_um": None, "recurrence_peak": None}
    return {"recurrence_z_um": found[0], "recurrence_peak": found[1]}


def _evolve(model, launch, evo):
    start = AmplitudeState.localized(model.size, launch)
    method = evo["method"]
    if method == "ode":
        return evolve_ode(model, start, evo["z_end"], evo["z_steps"])
    if method == "circulant":
        grid = np.linspace(0.0, evo["z_end"], evo["z_steps"] + 1)
        amps = np.array([circulant_oracle(model, start, z).amplitudes for z in grid])
        return PropagationRecord(grid, np.abs(amps) ** 2, amps)
    return record_expm(model, start, evo["z_end"], evo["z_steps"])


def run_dispersion(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    modal = solve_dispersion(spec)
    art.csv("modal", ["V", "U", "W", "delta", "beta_per_um", "residual"],
            [[modal.V, modal.U, modal.W, modal.delta, modal.beta, modal.residual()]])
    d = np.asarray(cfg["geometry"]["separations"])
    C = np.atleast_1d(coupling_coefficient(spec, modal, d))
    art.csv("coupling", ["d_um", "C_per_um", "L_cmt_um", "L_empirical_um"],
            np.column_stack([d, C, np.pi / (2 * C),
                             [coupling_length_empirical(x, CouplingFit()) for x in d]]))
    art.summary.update(V=modal.V, U=modal.U, W=modal.W, beta_per_um=modal.beta)


def run_couple2(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    evo = cfg["evolution"]
    sep = cfg["geometry"]["separation"]
    model = build_planar(2, sep, spec)
    rec = _evolve(model, evo["launch"], evo)
    art.record("intensity", rec)
    C = model.kappa[0, 1]
    art.summary.update(separation_um=sep, C_per_um=C, L_cmt_um=coupling_length_cmt(spec, sep),
                       **_recurrence(rec, evo["launch"], evo["recurrence_threshold"]))


def run_planar(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    g, evo = cfg["geometry"], cfg["evolution"]
    model = build_planar(g["n_guides"], g["pitch"], spec, g["include_nnn"])
    rec = _evolve(model, evo["launch"], evo)
    art.record("intensity", rec)
    art.summary.update(C_per_um=model.kappa[0, 1],
                       **_recurrence(rec, evo["launch"], evo["recurrence_threshold"]))


def _tube_geometry(g, length=20_000.0):
    return TubeGeometry(n_guides=g["n_guides"], tube_radius=g["tube_radius"], length_z=length)


def run_tube(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    g, evo = cfg["geometry"], cfg["evolution"]
    geom = _tube_geometry(g, evo["z_end"])
    model = build_tube(geom, spec, g["neighbour_orders"])
    rec = _evolve(model, evo["launch"], evo)
    art.record("intensity", rec)
    art.summary.update(chord_um=[geom.chord(k) for k in range(1, geom.n_guides // 2 + 1)],
                       nnnc_ratio=nnnc_ratio(spec, geom) if geom.n_guides > 3 else 1.0,
                       **_recurrence(rec, evo["launch"], evo["recurrence_threshold"]))


def run_fanin(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    g, evo = cfg["geometry"], cfg["evolution"]
    geom = _tube_geometry(g, evo["z_end"])
    fanin = FanInPath(tube=geom, stages=g["stages"], start_pitch=g["start_pitch"],
                      intermediate_radius=g["intermediate_radius"],
                      stage_length=g["stage_length"])
    samples = g["z_samples"] or int(round(fanin.length)) + 1
    profile = fanin_coupling_profile(fanin, spec, samples)
    start = AmplitudeState.localized(geom.n_guides, evo["launch"])
    steps_in = max(1, int(round(evo["z_steps"] * fanin.length / (fanin.length + evo["z_end"]))))
    rec_in = evolve_ode(profile, start, fanin.length, steps_in)
    tube = build_tube(geom, spec, g["neighbour_orders"])
    rec_tube = record_expm(tube, rec_in.final_state(), fanin.length + evo["z_end"],
                           max(1, evo["z_steps"] - steps_in))
    rec = PropagationRecord(np.concatenate([rec_in.z_grid, rec_tube.z_grid[1:]]),
                            np.vstack([rec_in.intensity, rec_tube.intensity[1:]]))
    art.record("intensity", rec)
    art.csv("coupling_profile", ["z_um", "C_nearest_per_um", "C_max_per_um"],
            np.column_stack([profile.z_grid, profile.kappa_z[:, 0, 1],
                             profile.kappa_z.max(axis=(1, 2))]))
    art.summary.update(fanin_length_um=fanin.length,
                       launch_power_after_fanin=float(rec_in.intensity[-1, evo["launch"]]))


def run_ctqw(cfg, art):
    w = cfg["walk"]
    graph = GraphSpec(w["graph"], w["size"], w["gamma"])
    h = build_ctqw(graph)
    if w["start"] >= h.n_vertices:
        raise ConfigError("walk.start", f"vertex {w['start']} outside the graph")
    times = np.linspace(0.0, w["t_end"], w["t_steps"] + 1)
    p = np.abs(propagate(h, w["start"], times)) ** 2
    art.csv("probabilities", ["t"] + [f"v{v}" for v in range(h.n_vertices)],
            np.column_stack([times, p]))


def _initial_coin(name):
    return {"symmetric": np.array([1, 1j]) / np.sqrt(2), "up": np.array([1, 0]),
            "down": np.array([0, 1])}[name]


def run_coined(cfg, art):
    w = cfg["walk"]
    state = CoinedState.at_origin(_initial_coin(w["initial"]))
    variances = []
    for _ in range(w["steps"]):
        state = coined_step(state)
        variances.append(position_variance(state.positions, state.distribution()))
    art.csv("distribution", ["x", "probability"],
            np.column_stack([state.positions, state.distribution()]))
    t = np.arange(1, w["steps"] + 1)
    art.csv("variance", ["t", "variance"], np.column_stack([t, variances]))
    if w["steps"] >= 10:
        art.summary["variance_exponent"] = variance_exponent(t[9:], variances[9:])


def run_scattering(cfg, art):
    w = cfg["walk"]
    state = ScatteringState.single_edge(w["steps"] + 2, w["direction"])
    variances = []
    for _ in range(w["steps"]):
        state = scattering_step(state, w["r"], w["t"])
        x, p = state.position_distribution()
        variances.append(position_variance(x, p))
    x, p = state.position_distribution()
    art.csv("distribution", ["x", "probability"], np.column_stack([x, p]))
    art.csv("variance", ["t", "variance"],
            np.column_stack([np.arange(1, w["steps"] + 1), variances]))


def run_gluedtree(cfg, art):
    w = cfg["walk"]
    tr = glued_tree_traversal(w["depth"], w["t_max"], w["samples"], w["gamma"], w["walkers"],
                              cfg["seed"])
    header = ["t"] + [f"column_{j}" for j in range(2 * w["depth"] + 1)]
    art.csv("quantum", header, np.column_stack([tr.times, tr.quantum]))
    art.csv("classical", header + ["reached_exit"],
            np.column_stack([tr.times, tr.classical, tr.classical_hit]))
    try:
        speed = tr.frontier_speed()
    except DegenerateFitError:
        speed = None
    art.summary.update(seed=cfg["seed"], walkers=w["walkers"],
                       quantum_exit_peak=tr.quantum_exit_peak,
                       classical_exit_peak=tr.classical_exit_peak,
                       classical_reached_exit=float(tr.classical_hit[-1]),
                       frontier_speed=speed)


def _correlation_model(cfg, spec):
    g = cfg["geometry"]
    if g["layout"] == "coupler":
        return build_planar(2, g["separation"], spec)
    if g["layout"] == "tube":
        return build_tube(_tube_geometry(g), spec, g["neighbour_orders"])
    return build_planar(g["n_guides"], g["pitch"], spec, g["include_nnn"])


def run_correlations(cfg, art):
    spec = cfgmod.waveguide_spec(cfg["waveguide"])
    c, out = cfg["correlations"], cfg["output"]
    u = transfer_matrix(_correlation_model(cfg, spec), cfg["evolution"]["z_end"])
    k, l = c["inputs"]
    for kind in c["kinds"]:
        if kind == "entangled":
            m = CORRELATORS[kind](u, k, l, c["phase"])
        elif kind == "classical":
            m = CORRELATORS[kind](u, k, l, c["n_phases"])
        else:
            m = CORRELATORS[kind](u, k, l)
        art.matrix(kind, m.gamma)
        if out["heatmap"]:
            art.heatmap(kind, m.gamma, out["colormap"], out["cell"])


RUNNERS = {
    "dispersion": run_dispersion,
    "couple2": run_couple2,
    "planar": run_planar,
    "tube": run_tube,
    "fanin": run_fanin,
    "ctqw": run_ctqw,
    "coined": run_coined,
    "scattering": run_scattering,
    "gluedtree": run_gluedtree,
    "correlations": run_correlations,
}


def prepare(cfg):
    """Run the computation for a validated config; returns pending artifacts."""
    art = Artifacts(cfg["output"]["prefix"])
    RUNNERS[cfg["experiment"]](cfg, art)
    return art


def run(cfg, out_dir):
    return prepare(cfg).write(out_dir)
