"""Exact constrained spectrum: 4M eigenpairs on states annihilated by 2bH.

Two routes are provided. "filter" diagonalizes 4M and keeps eigenvectors
whose constraint residual ||2bH psi||_2 / ||2bH||_max falls under the
tolerance; this is the route that reproduces the published eigenvalues.
"project" builds the numerical null space of 2bH and diagonalizes 4M inside
it. At finite truncation the two do not agree beyond the lowest states: the
filter states are exact 4M eigenvectors with small constraint violation,
while the projected states satisfy the constraint to rounding but are only
approximate 4M eigenvectors.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import eig_hermitian

# residual scales differ by method: exact 4M eigenvectors carry constraint
# residuals around 1e-2 at q=4 while null-space vectors sit at rounding level
DEFAULT_TOL = {"filter": 5e-2, "project": 1e-6}

# gap below which adjacent 4M eigenvalues are treated as one degenerate block
DEGENERACY_GAP = 1e-9


@dataclass
class ConstrainedSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    method: str
    tol: float
    ranked_residuals: np.ndarray

    @property
    def empty(self):
        return self.eigenvalues.size == 0


def _degenerate_blocks(values, scale):
    """Index ranges of eigenvalue clusters closer than the degeneracy gap."""
    blocks = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > DEGENERACY_GAP * max(1.0, scale):
            blocks.append((start, i))
            start = i
    return blocks


def constrained_spectrum(pair, method="filter", tol=None):
    """Solve 4M restricted to the kernel of 2bH.

    Parameters
    ----------
    pair : model.OperatorPair
    method : {"filter", "project"}
    tol : float, optional
        Relative retention tolerance; per-method default when omitted.

    Returns
    -------
    ConstrainedSpectrum
        Ascending eigenvalues with per-state residuals. An empty retention is
        reported, not raised: the ranked residual (or singular value) list is
        always attached for diagnosis.
    """
    if method not in DEFAULT_TOL:
        raise ValueError(f"method must be 'filter' or 'project', got {method!r}")
    tol = DEFAULT_TOL[method] if tol is None else float(tol)
    H = pair.hamiltonian_2bh
    M = pair.mass_4m
    hmax = float(np.max(np.abs(H)))

    if method == "filter":
        dec = eig_hermitian(M)
        values = dec.values.copy()
        vectors = dec.vectors.copy()
        # rotate degenerate blocks to diagonalize 2bH inside them, so the
        # retained/rejected split does not depend on eigensolver basis choice
        for lo, hi in _degenerate_blocks(values, float(np.max(np.abs(values), initial=1.0))):
            if hi - lo > 1:
                block = vectors[:, lo:hi]
                sub = block.conj().T @ H @ block
                rot = eig_hermitian(0.5 * (sub + sub.conj().T)).vectors
                vectors[:, lo:hi] = block @ rot
        residuals = np.linalg.norm(H @ vectors, axis=0) / hmax
        keep = residuals < tol
        ranked = np.sort(residuals)
        return ConstrainedSpectrum(
            eigenvalues=values[keep],
            eigenvectors=vectors[:, keep],
            residuals=residuals[keep],
            method=method,
            tol=tol,
            ranked_residuals=ranked,
        )

    # project: null space of 2bH (singular values of a Hermitian matrix are
    # the absolute eigenvalues), then 4M restricted to it
    dec_h = eig_hermitian(H)
    sigma = np.abs(dec_h.values)
    smax = float(np.max(sigma))
    ranked = np.sort(sigma / smax)
    null_mask = sigma < tol * smax
    K = dec_h.vectors[:, null_mask]
    if K.shape[1] == 0:
        return ConstrainedSpectrum(
            eigenvalues=np.empty(0),
            eigenvectors=np.empty((H.shape[0], 0), dtype=complex),
            residuals=np.empty(0),
            method=method,
            tol=tol,
            ranked_residuals=ranked,
        )
    sub = K.conj().T @ M @ K
    dec_m = eig_hermitian(0.5 * (sub + sub.conj().T))
    states = K @ dec_m.vectors
    residuals = np.linalg.norm(H @ states, axis=0) / hmax
    return ConstrainedSpectrum(
        eigenvalues=dec_m.values,
        eigenvectors=states,
        residuals=residuals,
        method=method,
        tol=tol,
        ranked_residuals=ranked,
    )


def full_spectrum(op):
    """Unconstrained eigendecomposition; thin delegation kept for symmetry."""
    return eig_hermitian(op)
