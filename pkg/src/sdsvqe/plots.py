"""Matplotlib renderings of the CLI data products.

Each function takes already-computed data and writes one PNG next to the
delimited output it mirrors. Everything uses the Agg backend so headless
runs work.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_pauli_terms(psum, path):
    """Coefficient magnitudes on a log axis, in term order."""
    mags = np.array([abs(a) for _, a in psum.terms])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.semilogy(np.arange(mags.size), np.sort(mags)[::-1], ".", markersize=3)
    ax.set_xlabel("term rank")
    ax.set_ylabel("|coefficient|")
    ax.set_title(f"{len(psum)} Pauli terms, q={psum.qubits}")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def render_convergence(rows, exact_min, path):
    """Best-so-far objective per start against evaluation count."""
    fig, ax = plt.subplots(figsize=(7, 4))
    by_start = {}
    for sid, idx, _, best in rows:
        by_start.setdefault(sid, ([], []))
        by_start[sid][0].append(idx)
        by_start[sid][1].append(best)
    for sid, (xs, ys) in sorted(by_start.items()):
        ax.plot(xs, ys, lw=0.8, label=f"start {sid}")
    if exact_min is not None:
        ax.axhline(exact_min, color="k", ls="--", lw=0.8, label="exact minimum")
    ax.set_xlabel("objective evaluation")
    ax.set_ylabel("best expectation value")
    if len(by_start) <= 10:
        ax.legend(fontsize=7)
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def render_spectrum(result, path):
    """Retained eigenvalues and the residual ranking of all candidates."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    if result.eigenvalues.size:
        ax1.stem(result.eigenvalues, np.ones_like(result.eigenvalues))
    ax1.set_xlabel("4M eigenvalue")
    ax1.set_yticks([])
    ax1.set_title(f"{result.eigenvalues.size} retained states ({result.method})")
    ax2.semilogy(np.arange(result.ranked_residuals.size), result.ranked_residuals, "o", ms=3)
    ax2.axhline(result.tol, color="r", ls="--", lw=0.8, label="tolerance")
    ax2.set_xlabel("state rank")
    ax2.set_ylabel("constraint residual")
    ax2.legend(fontsize=8)
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def render_thermo_sweep(points, path):
    """Radii, entropies, and inverse temperatures across the mass range."""
    M = [p.M for p in points]
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
    axes[0].plot(M, [p.r_bh for p in points], label="r_bh")
    axes[0].plot(M, [p.r_ch for p in points], label="r_ch")
    axes[0].set_ylabel("horizon radius")
    axes[1].plot(M, [p.S_bh for p in points], label="S_bh")
    axes[1].plot(M, [p.S_ch for p in points], label="S_ch")
    axes[1].plot(M, [p.S_tot for p in points], label="S_tot")
    axes[1].set_ylabel("entropy")
    finite = [p for p in points if np.isfinite(p.beta_bh)]
    axes[2].plot([p.M for p in finite], [p.beta_bh for p in finite], label="beta_bh")
    axes[2].plot([p.M for p in finite], [p.beta_ch for p in finite], label="beta_ch")
    axes[2].set_ylabel("inverse temperature")
    for ax in axes:
        ax.set_xlabel("M")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def render_field(grid, path, title="", magnitude=True):
    """Heatmap of a FieldGrid (|values|^2 by default, else the real part)."""
    data = np.abs(grid.values.T) ** 2 if magnitude else grid.values.T.real
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    im = ax.pcolormesh(grid.u_axis, grid.v_axis, data, shading="auto", cmap="viridis")
    fig.colorbar(im, ax=ax)
    ax.set_xlabel("first axis")
    ax.set_ylabel("second axis")
    if title:
        ax.set_title(title)
    _save(fig, path)


def render_contours(grid, path, levels=None, title=""):
    """Contour rendering of a real-valued FieldGrid."""
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    cs = ax.contour(grid.u_axis, grid.v_axis, grid.values.T.real,
                    levels=levels if levels is not None else 12)
    ax.clabel(cs, inline=True, fontsize=7)
    ax.set_xlabel("first axis")
    ax.set_ylabel("second axis")
    if title:
        ax.set_title(title)
    _save(fig, path)


def render_potentials(table, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(table.x, table.v_s, label="V_S")
    ax.plot(table.x, table.v_sd, label="V_SD")
    ax.set_xlabel("x = u - v")
    ax.set_ylabel("potential")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)
