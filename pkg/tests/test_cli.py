import json
import pathlib
import subprocess
import sys

import numpy as np
import pytest

from wgwalk import config as cfgmod
from wgwalk.cli import build_config, main, parse_grid
from wgwalk.errors import ConfigError
from wgwalk.output import read_csv

CFG = pathlib.Path(__file__).resolve().parent.parent / "configs"
CONFIGS = sorted(CFG.glob("*.json"))


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


def write_config(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


@pytest.mark.parametrize("config", CONFIGS, ids=lambda p: p.stem)
def test_example_configs_deterministic(config, tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli(["run", config, "--out", a], capsys)[0] == 0
    assert run_cli(["run", config, "--out", b], capsys)[0] == 0
    first = tree_bytes(a)
    assert first and first == tree_bytes(b)


def test_couple2_output(tmp_path, capsys):
    code, out, _ = run_cli(["run", CFG / "couple2.json", "--out", tmp_path], capsys)
    assert code == 0
    header, data = read_csv(tmp_path / "couple2_intensity.csv")
    assert header == ["z_um", "guide_0", "guide_1"]
    summary = json.loads((tmp_path / "couple2_summary.json").read_text())
    c = summary["C_per_um"]
    assert np.max(np.abs(data[:, 2] - np.sin(c * data[:, 0]) ** 2)) < 1e-8
    assert summary["recurrence_z_um"] == pytest.approx(np.pi / c, rel=1e-6)
    assert len(out.splitlines()) == 2


def test_tube_output_matches_circulant(tmp_path, capsys):
    assert run_cli(["run", CFG / "tube6.json", "--out", tmp_path,
                    "--set", "evolution.method=\"ode\""], capsys)[0] == 0
    _, ode = read_csv(tmp_path / "tube_intensity.csv")
    assert run_cli(["run", CFG / "tube6.json", "--out", tmp_path / "c"], capsys)[0] == 0
    _, circ = read_csv(tmp_path / "c" / "tube_intensity.csv")
    assert ode.shape == (401, 7)
    assert np.max(np.abs(ode - circ)) < 1e-8


def test_invalid_tube_radius(tmp_path, capsys):
    cfg = json.loads((CFG / "tube6.json").read_text())
    cfg["geometry"]["tube_radius"] = -1
    out_dir = tmp_path / "out"
    code, _, err = run_cli(["run", write_config(tmp_path, cfg), "--out", out_dir], capsys)
    assert code == 2
    payload = json.loads(err)
    assert payload["error"] == "ConfigError" and payload["key"] == "geometry.tube_radius"
    assert not out_dir.exists() or not any(out_dir.iterdir())


@pytest.mark.parametrize("mutate, key", [
    (lambda c: c["geometry"].update(radius=7.0), "geometry.radius"),
    (lambda c: c.update(bogus=1), "bogus"),
    (lambda c: c.update(walk={"steps": 3}), "walk"),
    (lambda c: c["evolution"].update(method="rk4"), "evolution.method"),
    (lambda c: c["evolution"].update(launch=6), "evolution.launch"),
    (lambda c: c["geometry"].update(n_guides=2.5), "geometry.n_guides"),
    (lambda c: c.update(experiment="hypercube"), "experiment"),
])
def test_schema_violations_name_key(tmp_path, capsys, mutate, key):
    cfg = json.loads((CFG / "tube6.json").read_text())
    mutate(cfg)
    code, _, err = run_cli(["run", write_config(tmp_path, cfg), "--out", tmp_path / "o"], capsys)
    assert code == 2
    assert json.loads(err)["key"] == key


def test_domain_error_becomes_config_error(tmp_path, capsys):
    # chord of 1.5 um is below the core diameter
    code, _, err = run_cli(["run", CFG / "tube6.json", "--set", "geometry.tube_radius=1.5",
                            "--out", tmp_path / "o"], capsys)
    assert code == 2
    assert json.loads(err)["key"] == "geometry.tube_radius"
    code, _, err = run_cli(["run", CFG / "dispersion.json", "--set", "waveguide.contrast=0.05",
                            "--out", tmp_path / "o"], capsys)
    assert code == 2 and json.loads(err)["key"] == "waveguide.contrast"
    code, _, err = run_cli(["run", CFG / "planar21.json", "--set", "geometry.pitch=2.0",
                            "--out", tmp_path / "o"], capsys)
    assert code == 2 and json.loads(err)["key"] == "geometry.pitch"
    # overlap that only appears part-way along the fan-in
    code, _, err = run_cli(["run", CFG / "fanin2stage.json", "--set", "geometry.start_pitch=1.0",
                            "--out", tmp_path / "o"], capsys)
    assert code == 2 and json.loads(err)["key"] == "geometry"
    assert not (tmp_path / "o").exists()


def test_walk_and_correlation_errors(tmp_path, capsys):
    cases = [(CFG / "gluedtree.json", "walk.depth=9", "walk.depth"),
             (CFG / "scattering.json", "walk.r=0.9", "walk.r"),
             (CFG / "hom.json", "correlations.inputs=[0,2]", "correlations.inputs[1]"),
             (CFG / "ctqw_ring3.json", "walk.start=3", "walk.start")]
    for config, override, key in cases:
        code, _, err = run_cli(["run", config, "--set", override, "--out", tmp_path / "o"],
                               capsys)
        assert code == 2, override
        assert json.loads(err)["key"] == key


def test_bad_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(["run", path], capsys)
    assert code == 2 and json.loads(err)["key"] == "<file>"


def test_override_parsing():
    raw = {"experiment": "tube"}
    raw = cfgmod.apply_override(raw, *cfgmod.parse_override("geometry.tube_radius=10"))
    cfg = cfgmod.validate(raw)
    assert cfg["geometry"]["tube_radius"] == 10.0
    assert cfg["output"]["prefix"] == "tube"
    with pytest.raises(ConfigError):
        cfgmod.parse_override("geometry.tube_radius")


def test_defaults_fill_in():
    cfg = build_config(CFG / "coined.json")
    assert cfg["walk"]["steps"] == 100 and cfg["seed"] == 0
    assert set(cfg) == {"experiment", "seed", "walk", "output"}


def test_parse_grid():
    assert parse_grid("geometry.tube_radius=5:12:8") == ("geometry.tube_radius",
                                                          [5, 6, 7, 8, 9, 10, 11, 12])
    key, values = parse_grid("evolution.z_end=1000:2000:3")
    assert values == [1000, 1500, 2000]
    key, values = parse_grid("geometry.tube_radius=5.5:6.5:3")
    assert values == [5.5, 6.0, 6.5]
    for bad in ("nokey", "a=1:2", "a=1:2:0", "a=x:2:3"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


def test_sweep(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WGWALK_THREADS", "2")
    code, out, _ = run_cli(["sweep", CFG / "tube6.json", "--grid",
                            "geometry.tube_radius=5:12:8", "--set", "evolution.z_steps=20",
                            "--out", tmp_path], capsys)
    assert code == 0
    dirs = sorted(p.name for p in tmp_path.iterdir())
    assert len(dirs) == 8 and "geometry.tube_radius=5" in dirs
    ratios = [json.loads((tmp_path / f"geometry.tube_radius={r}" / "tube_summary.json")
                         .read_text())["nnnc_ratio"] for r in range(5, 13)]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert len(out.splitlines()) == 16


def test_sweep_thread_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WGWALK_THREADS", "zero")
    code, _, err = run_cli(["sweep", CFG / "coined.json", "--grid", "walk.steps=10:20:2",
                            "--out", tmp_path], capsys)
    assert code == 2 and json.loads(err)["key"] == "WGWALK_THREADS"


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "wgwalk.cli", "--help"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and "sweep" in proc.stdout
