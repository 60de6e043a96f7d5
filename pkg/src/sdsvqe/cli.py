"""Command line interface: reproducible file-based runs of every pipeline.

Each command resolves a JSON config (flags override file values), writes its
data products and a rendered PNG into the output directory together with a
run manifest, and prints exactly one summary JSON document on stdout.

Exit codes: 0 success, 2 usage or config problem, 3 numerical failure.
"""

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, ansatz, model, pauli, plots, spectrum as spectrum_mod, thermo, vqe, wavefn
from .errors import ConfigError, ToolkitError
from .numerics import OptimizerSettings

_SCHEMA = {
    "model": {"lambda", "qubits", "basis"},
    "ansatz": {"depth", "entanglement"},
    "optimizer": {"max_iterations", "tolerance", "memory_pairs", "bounds"},
    "vqe": {"seeds"},
    "pauli": {"threshold"},
    "spectrum": {"method", "tol"},
}

_DEFAULTS = {
    "model": {"lambda": None, "qubits": 4, "basis": "oscillator"},
    "ansatz": {"depth": 3, "entanglement": "full"},
    "optimizer": {"max_iterations": 500, "tolerance": 1e-9, "memory_pairs": 10,
                  "bounds": [-2.0 * math.pi, 2.0 * math.pi]},
    "vqe": {"seeds": list(range(10))},
    "pauli": {"threshold": pauli.DEFAULT_THRESHOLD},
    "spectrum": {"method": "filter", "tol": None},
}


def fmt(x):
    """17-significant-digit float formatting (round-trip exact)."""
    if isinstance(x, float):
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        if math.isnan(x):
            return "NaN"
        return format(x, ".17g")
    return str(x)


def _json_encode(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{pad}  {json.dumps(str(k))}: {_json_encode(v, indent + 1)}'
                for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{pad}  {_json_encode(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, np.floating):
        return fmt(float(obj))
    return json.dumps(obj)


def dump_json(obj, path=None):
    text = _json_encode(obj) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_config(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    for section, body in raw.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"config section {section!r} must be an object")
        for key in body:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in config section {section!r}")
    return raw


def resolve_config(ns):
    """Defaults <- config file <- command line flags, in that order."""
    cfg = {sec: dict(vals) for sec, vals in _DEFAULTS.items()}
    if getattr(ns, "config", None):
        for section, body in load_config(ns.config).items():
            cfg[section].update(body)
    if getattr(ns, "qubits", None) is not None:
        cfg["model"]["qubits"] = ns.qubits
    if getattr(ns, "lam", None) is not None:
        cfg["model"]["lambda"] = ns.lam
    if getattr(ns, "threshold", None) is not None:
        cfg["pauli"]["threshold"] = ns.threshold
    if getattr(ns, "seed", None) is not None:
        n = len(cfg["vqe"]["seeds"]) or 1
        cfg["vqe"]["seeds"] = [ns.seed + i for i in range(n)]
    if cfg["model"]["lambda"] is None:
        # headline parameter pairs: lambda 0.005 at eight qubits, 0.01 below
        cfg["model"]["lambda"] = 0.005 if cfg["model"]["qubits"] == 8 else 0.01
    return cfg


def model_config(cfg):
    try:
        return model.ModelConfig(lam=float(cfg["model"]["lambda"]),
                                 qubits=int(cfg["model"]["qubits"]),
                                 basis=cfg["model"]["basis"])
    except ValueError as exc:
        raise ConfigError(str(exc))


def optimizer_settings(cfg):
    opt = cfg["optimizer"]
    bounds = opt["bounds"]
    if not (isinstance(bounds, (list, tuple)) and len(bounds) == 2):
        raise ConfigError("optimizer.bounds must be [lower, upper]")
    return OptimizerSettings(max_iterations=int(opt["max_iterations"]),
                             gradient_tolerance=float(opt["tolerance"]),
                             memory_pairs=int(opt["memory_pairs"]),
                             lower=float(bounds[0]), upper=float(bounds[1]))


def write_manifest(outdir, command, ns, cfg, seeds, wall_clock):
    if getattr(ns, "config", None):
        with open(ns.config, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
    else:
        digest = hashlib.sha256(dump_json(cfg).encode()).hexdigest()
    manifest = {
        "command": command,
        "config_path": getattr(ns, "config", None),
        "output_dir": str(outdir),
        "tool_version": __version__,
        "seeds": list(seeds),
        "wall_clock_seconds": wall_clock,
        "input_hash": digest,
        "resolved_config": cfg,
    }
    dump_json(manifest, outdir / "manifest.json")


def _write_field_csv(grid, path, extra=None):
    """Rows (u, v, re, im, abs2[, flag]) over the rectangular mesh."""
    with open(path, "w") as fh:
        header = "u,v,re,im,abs2"
        if extra is not None:
            header += f",{extra[0]}"
        fh.write(header + "\n")
        for i, uv in enumerate(grid.u_axis):
            for j, vv in enumerate(grid.v_axis):
                z = grid.values[i, j]
                row = (f"{fmt(float(uv))},{fmt(float(vv))},{fmt(z.real)},"
                       f"{fmt(z.imag)},{fmt(abs(z) ** 2)}")
                if extra is not None:
                    row += f",{int(extra[1][i, j])}"
                fh.write(row + "\n")


def cmd_decompose(ns, cfg, outdir):
    config = model_config(cfg)
    threshold = float(cfg["pauli"]["threshold"])
    psum = pauli.decompose(model.build_operators(config).mass_4m, threshold)
    pauli.write_csv(psum, outdir / "pauli_terms.csv")
    plots.render_pauli_terms(psum, outdir / "pauli_terms.png")
    return {"qubits": config.qubits, "lambda": config.lam,
            "threshold": threshold, "term_count": len(psum)}, []


def cmd_vqe(ns, cfg, outdir):
    config = model_config(cfg)
    spec = ansatz.AnsatzSpec(qubits=config.qubits,
                             depth=int(cfg["ansatz"]["depth"]),
                             entanglement=cfg["ansatz"]["entanglement"])
    settings = optimizer_settings(cfg)
    seeds = [int(s) for s in cfg["vqe"]["seeds"]]
    operators = model.build_operators(config)
    run = vqe.run_vqe(config, spec=spec, settings=settings, seeds=seeds,
                      operator=operators.mass_4m)
    psum = pauli.decompose(operators.mass_4m, float(cfg["pauli"]["threshold"]))
    vqe.write_convergence_csv(run, outdir / "convergence.csv")
    rows = vqe.convergence_rows(run)
    plots.render_convergence(rows, run.exact_min, outdir / "convergence.png")
    return vqe.summary(run, pauli_terms=len(psum)), seeds


def cmd_spectrum(ns, cfg, outdir):
    config = model_config(cfg)
    pair = model.build_operators(config)
    tol = cfg["spectrum"]["tol"]
    result = spectrum_mod.constrained_spectrum(
        pair, method=cfg["spectrum"]["method"],
        tol=None if tol is None else float(tol))
    payload = {
        "method": result.method,
        "tol": result.tol,
        "eigenvalues": [float(x) for x in result.eigenvalues],
        "residuals": [float(x) for x in result.residuals],
    }
    dump_json(payload, outdir / "spectrum.json")
    with open(outdir / "eigenvectors.csv", "w") as fh:
        fh.write("state_index,basis_index,real,imag\n")
        for k in range(result.eigenvectors.shape[1]):
            for b in range(result.eigenvectors.shape[0]):
                z = result.eigenvectors[b, k]
                fh.write(f"{k},{b},{fmt(z.real)},{fmt(z.imag)}\n")
    plots.render_spectrum(result, outdir / "spectrum.png")
    summary = dict(payload)
    summary["qubits"] = config.qubits
    summary["lambda"] = config.lam
    summary["retained"] = int(result.eigenvalues.size)
    return summary, []


def _parse_sweep(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("--sweep expects start:stop:count")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad --sweep value {text!r}")
    if n < 1 or not b > a:
        raise ConfigError("--sweep needs stop > start and count >= 1")
    return a, b, n


def cmd_thermo(ns, cfg, outdir):
    lam = float(cfg["model"]["lambda"])
    if ns.sweep:
        a, b, n = _parse_sweep(ns.sweep)
        # left-open grid: the a endpoint itself is excluded so a = 0 works
        masses = a + (b - a) * np.arange(1, n + 1) / n
        points = thermo.sweep(lam, masses)
        with open(outdir / "sweep.csv", "w") as fh:
            fh.write("M,r_bh,r_ch,S_bh,S_ch,S_tot,beta_bh,beta_ch,T_bh,T_ch\n")
            for p in points:
                fh.write(",".join(fmt(v) for v in (
                    p.M, p.r_bh, p.r_ch, p.S_bh, p.S_ch, p.S_tot,
                    p.beta_bh, p.beta_ch, p.T_bh, p.T_ch)) + "\n")
        plots.render_thermo_sweep(points, outdir / "sweep.png")
        return {"lambda": lam, "rows": len(points), "M_first": points[0].M,
                "M_last": points[-1].M, "nariai_mass": model.nariai_mass(lam)}, []
    M = 0.5 if ns.M is None else float(ns.M)
    p = thermo.thermo_point(M, lam)
    payload = {"M": p.M, "lambda": p.lam, "ell": p.ell, "r_bh": p.r_bh,
               "r_ch": p.r_ch, "S_bh": p.S_bh, "S_ch": p.S_ch, "S_tot": p.S_tot,
               "beta_bh": p.beta_bh, "beta_ch": p.beta_ch,
               "T_bh": p.T_bh, "T_ch": p.T_ch}
    dump_json(payload, outdir / "thermo.json")
    return payload, []


def cmd_wavefn(ns, cfg, outdir):
    lam = float(cfg["model"]["lambda"])
    if ns.wkb:
        M = 0.5 if ns.M is None else float(ns.M)
        grid = wavefn.wkb_grid(np.linspace(-3.0, 3.0, 121),
                               np.linspace(0.05, 20.0, 200), M, lam,
                               radicand=ns.radicand)
        _write_field_csv(grid, outdir / "wkb.csv", extra=("allowed", grid.allowed))
        plots.render_field(grid, outdir / "wkb.png", title="|WKB|^2")
        allowed_share = float(np.mean(grid.allowed))
        return {"mode": "wkb", "M": M, "lambda": lam,
                "radicand": ns.radicand, "allowed_fraction": allowed_share}, []
    config = model_config(cfg)
    pair = model.build_operators(config)
    tol = cfg["spectrum"]["tol"]
    result = spectrum_mod.constrained_spectrum(
        pair, method=cfg["spectrum"]["method"],
        tol=None if tol is None else float(tol))
    if result.empty:
        raise ToolkitError("no constrained states retained; nothing to reconstruct")
    coeffs = wavefn.reshape_state(result.eigenvectors[:, 0], config.qubits)
    grid = wavefn.hermite_grid(coeffs)
    _write_field_csv(grid, outdir / "wavefn_grid.csv")
    plots.render_field(grid, outdir / "wavefn.png", title="|Psi|^2 lowest constrained state")
    du = grid.u_axis[1] - grid.u_axis[0]
    dv = grid.v_axis[1] - grid.v_axis[0]
    grid_norm = float(np.trapezoid(np.trapezoid(np.abs(grid.values) ** 2, dx=dv, axis=1), dx=du))
    parity_dev = float(np.max(np.abs(grid.values - grid.values[::-1, ::-1])))
    return {"mode": "hermite", "qubits": config.qubits, "lambda": config.lam,
            "eigenvalue": float(result.eigenvalues[0]),
            "coeff_norm": float(np.sum(np.abs(coeffs) ** 2)),
            "grid_norm": grid_norm, "parity_deviation": parity_dev}, []


def cmd_grids(ns, cfg, outdir):
    lam = float(cfg["model"]["lambda"])
    M = 0.5 if ns.M is None else float(ns.M)
    table = wavefn.potential_grid(lam)
    with open(outdir / "potentials.csv", "w") as fh:
        fh.write("x,v_s,v_sd\n")
        for x, vs, vsd in zip(table.x, table.v_s, table.v_sd):
            fh.write(f"{fmt(float(x))},{fmt(float(vs))},{fmt(float(vsd))}\n")
    plots.render_potentials(table, outdir / "potentials.png")
    ab = wavefn.contour_grid_ab(M, lam)
    uv = wavefn.contour_grid_uv(M, lam)
    _write_field_csv(ab, outdir / "contour_ab.csv")
    _write_field_csv(uv, outdir / "contour_uv.csv")
    plots.render_contours(ab, outdir / "contour_ab.png", title="M(p_a, b)")
    plots.render_contours(uv, outdir / "contour_uv.png", title="4M(p_u + p_v, u - v)")
    v_sd_max = float(np.max(table.v_sd))
    return {"lambda": lam, "M": M, "v_sd_max": v_sd_max,
            "nariai_4m": 4.0 * model.nariai_mass(lam)}, []


_COMMANDS = {
    "decompose": cmd_decompose,
    "vqe": cmd_vqe,
    "spectrum": cmd_spectrum,
    "thermo": cmd_thermo,
    "wavefn": cmd_wavefn,
    "grids": cmd_grids,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sdsvqe",
        description="Minisuperspace mass-operator spectra, VQE runs, and horizon thermodynamics.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output directory (default runs/<command>)")
        p.add_argument("--seed", type=int, help="base RNG seed for multi-start runs")
        p.add_argument("--lambda", dest="lam", type=float, help="cosmological constant")
        p.add_argument("--qubits", type=int, help="total qubit count (even)")
        p.add_argument("--M", type=float, help="mass value")
        p.add_argument("--sweep", help="mass sweep start:stop:count (start excluded)")
        p.add_argument("--threshold", type=float, help="Pauli coefficient threshold")
        if name == "wavefn":
            p.add_argument("--wkb", action="store_true", help="emit the WKB grid instead")
            p.add_argument("--radicand", choices=["cubic", "quadratic"], default="cubic")
    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        cfg = resolve_config(ns)
        outdir = Path(ns.out) if ns.out else Path("runs") / ns.command
        outdir.mkdir(parents=True, exist_ok=True)
        summary, seeds = _COMMANDS[ns.command](ns, cfg, outdir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    write_manifest(outdir, ns.command, ns, cfg, seeds, time.perf_counter() - started)
    sys.stdout.write(dump_json(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())
