"""End-to-end command line runs: exit codes, files, summaries, replay."""

import json
import math

import numpy as np
import pytest

from sdsvqe import cli, model, pauli
from sdsvqe.errors import ConfigError

PAULI_DENSE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if code == 0 else None


def test_fmt_round_trips_floats():
    for x in (math.pi, 1.0 / 3.0, 1e-300, 0.1, 5e-324, -2.0 ** 52 + 0.5):
        assert float(cli.fmt(x)) == x
    assert cli.fmt(float("inf")) == "Infinity"
    assert cli.fmt(float("-inf")) == "-Infinity"
    assert cli.fmt(float("nan")) == "NaN"


def test_json_encoder_handles_nonfinite():
    text = cli.dump_json({"a": float("inf"), "b": float("-inf"), "c": float("nan"),
                          "d": [1.5, None, True]})
    back = json.loads(text)
    assert back["a"] == float("inf") and back["b"] == float("-inf")
    assert math.isnan(back["c"])
    assert back["d"] == [1.5, None, True]


def test_resolve_config_seed_and_lambda_defaults():
    parser = cli.build_parser()
    cfg = cli.resolve_config(parser.parse_args(["vqe", "--seed", "7"]))
    assert cfg["vqe"]["seeds"] == list(range(7, 17))
    assert cfg["model"]["lambda"] == 0.01
    cfg8 = cli.resolve_config(parser.parse_args(["vqe", "--qubits", "8"]))
    assert cfg8["model"]["lambda"] == 0.005
    cfg_explicit = cli.resolve_config(parser.parse_args(["vqe", "--qubits", "8", "--lambda", "3"]))
    assert cfg_explicit["model"]["lambda"] == 3.0


def test_parse_sweep_validation():
    assert cli._parse_sweep("0:1:4") == (0.0, 1.0, 4)
    for bad in ("1:2", "2:1:5", "a:b:3", "0:1:0"):
        with pytest.raises(ConfigError):
            cli._parse_sweep(bad)


def test_exit_codes(tmp_path, capsys):
    # missing config file
    assert cli.main(["thermo", "--config", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "a")]) == 2
    # unknown config key
    bad = tmp_path / "bad.json"
    bad.write_text('{"model": {"qubitz": 4}}')
    assert cli.main(["thermo", "--config", str(bad), "--out", str(tmp_path / "b")]) == 2
    # malformed sweep spec
    assert cli.main(["thermo", "--sweep", "1:2", "--out", str(tmp_path / "c")]) == 2
    # mass above the horizon bound is a numerical failure, not usage
    assert cli.main(["thermo", "--M", "99", "--out", str(tmp_path / "d")]) == 3
    err = capsys.readouterr().err
    assert "config error" in err and "numerical failure" in err


def test_thermo_point_outputs(tmp_path, capsys):
    out = tmp_path / "thermo"
    code, summary = run_cli(["thermo", "--M", "0.5", "--lambda", "0.01",
                             "--out", str(out)], capsys)
    assert code == 0
    assert abs(summary["r_bh"] - 1.00337) < 1e-3
    assert abs(summary["r_ch"] - 16.797) < 1e-3
    assert (out / "thermo.json").exists() and (out / "manifest.json").exists()
    on_disk = json.loads((out / "thermo.json").read_text())
    assert on_disk == summary
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "thermo"
    assert manifest["resolved_config"]["model"]["lambda"] == 0.01


def test_thermo_sweep_outputs(tmp_path, capsys):
    out = tmp_path / "sweep"
    code, summary = run_cli(["thermo", "--lambda", "3", "--sweep", "0:0.19245:8",
                             "--out", str(out)], capsys)
    assert code == 0
    assert summary["rows"] == 8
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "M,r_bh,r_ch,S_bh,S_ch,S_tot,beta_bh,beta_ch,T_bh,T_ch"
    assert len(lines) == 9
    first_mass = float(lines[1].split(",")[0])
    assert first_mass > 0.0  # start of the grid is excluded


def test_decompose_csv_rebuilds_operator(tmp_path, capsys):
    out = tmp_path / "dec"
    code, summary = run_cli(["decompose", "--qubits", "2", "--lambda", "0.01",
                             "--threshold", "0.0", "--out", str(out)], capsys)
    assert code == 0
    lines = (out / "pauli_terms.csv").read_text().splitlines()
    assert lines[0] == "label,coefficient"
    assert len(lines) - 1 == summary["term_count"]
    rebuilt = np.zeros((4, 4), dtype=complex)
    for line in lines[1:]:
        label, coeff = line.split(",")
        rebuilt += float(coeff) * np.kron(PAULI_DENSE[label[0]], PAULI_DENSE[label[1]])
    target = model.build_operators(model.ModelConfig(lam=0.01, qubits=2)).mass_4m
    assert np.max(np.abs(rebuilt - target)) < 1e-10
    assert (out / "pauli_terms.png").exists()


def test_vqe_smoke_and_summary_keys(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps(
        {"model": {"qubits": 2, "lambda": 0.01}, "vqe": {"seeds": [0, 1]}}))
    out = tmp_path / "vqe"
    code, summary = run_cli(["vqe", "--config", str(cfgfile), "--out", str(out)], capsys)
    assert code == 0
    assert set(summary) == {"qubits", "lambda", "pauli_terms", "exact_min",
                            "vqe_best", "gap", "seeds", "evaluations"}
    assert summary["seeds"] == [0, 1]
    assert -1e-9 <= summary["gap"] <= 1e-6
    lines = (out / "convergence.csv").read_text().splitlines()
    assert lines[0] == "start_id,eval_index,value,best_so_far"
    assert len(lines) - 1 == summary["evaluations"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seeds"] == [0, 1]


def test_replay_is_byte_identical(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps(
        {"model": {"qubits": 2, "lambda": 0.01}, "vqe": {"seeds": [0, 1]}}))
    pairs = []
    for tag in ("one", "two"):
        out = tmp_path / tag
        assert cli.main(["vqe", "--config", str(cfgfile), "--out", str(out)]) == 0
        capsys.readouterr()
        pairs.append(out)
        assert cli.main(["decompose", "--qubits", "4", "--lambda", "0.01",
                         "--out", str(out / "dec")]) == 0
        capsys.readouterr()
    a, b = pairs
    assert (a / "convergence.csv").read_bytes() == (b / "convergence.csv").read_bytes()
    assert (a / "dec" / "pauli_terms.csv").read_bytes() == (b / "dec" / "pauli_terms.csv").read_bytes()
    # manifests differ only in wall clock, by design
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    ma.pop("wall_clock_seconds"); mb.pop("wall_clock_seconds")
    ma.pop("output_dir"); mb.pop("output_dir")
    assert ma == mb


def test_spectrum_outputs_golden_levels(tmp_path, capsys):
    out = tmp_path / "spec"
    code, summary = run_cli(["spectrum", "--qubits", "4", "--lambda", "0.01",
                             "--out", str(out)], capsys)
    assert code == 0
    assert summary["method"] == "filter"
    assert summary["retained"] == 4
    golden = (0.0, 0.935639, 3.29768, 7.67034)
    for got, expect in zip(summary["eigenvalues"], golden):
        assert abs(got - expect) < 1e-3
    on_disk = json.loads((out / "spectrum.json").read_text())
    assert on_disk["eigenvalues"] == summary["eigenvalues"]
    vec_lines = (out / "eigenvectors.csv").read_text().splitlines()
    assert vec_lines[0] == "state_index,basis_index,real,imag"
    assert len(vec_lines) - 1 == 4 * 16
    assert (out / "spectrum.png").exists()


def test_wavefn_hermite_mode(tmp_path, capsys):
    out = tmp_path / "wf"
    code, summary = run_cli(["wavefn", "--qubits", "4", "--lambda", "0.01",
                             "--out", str(out)], capsys)
    assert code == 0
    assert summary["mode"] == "hermite"
    assert abs(summary["grid_norm"] - summary["coeff_norm"]) < 1e-3
    assert summary["parity_deviation"] < 1e-8
    header = (out / "wavefn_grid.csv").read_text().splitlines()[0]
    assert header == "u,v,re,im,abs2"
    assert (out / "wavefn.png").exists()


def test_wavefn_wkb_mode(tmp_path, capsys):
    out = tmp_path / "wkb"
    code, summary = run_cli(["wavefn", "--wkb", "--M", "0.5", "--lambda", "0.01",
                             "--radicand", "quadratic", "--out", str(out)], capsys)
    assert code == 0
    assert summary["mode"] == "wkb"
    assert summary["radicand"] == "quadratic"
    assert 0.0 < summary["allowed_fraction"] < 1.0
    lines = (out / "wkb.csv").read_text().splitlines()
    assert lines[0] == "u,v,re,im,abs2,allowed"
    assert set(line.rsplit(",", 1)[1] for line in lines[1:]) == {"0", "1"}


def test_grids_outputs(tmp_path, capsys):
    out = tmp_path / "grids"
    code, summary = run_cli(["grids", "--lambda", "0.01", "--out", str(out)], capsys)
    assert code == 0
    assert abs(summary["v_sd_max"] - summary["nariai_4m"]) < 1e-2
    for name in ("potentials.csv", "contour_ab.csv", "contour_uv.csv",
                 "potentials.png", "contour_ab.png", "contour_uv.png"):
        assert (out / name).exists()
    header = (out / "potentials.csv").read_text().splitlines()[0]
    assert header == "x,v_s,v_sd"
