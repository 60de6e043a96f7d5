"""Pauli-string expansion of Hermitian qubit operators and its inverse.

A string P_n is a tensor product of {I, X, Y, Z} with the leftmost symbol on
the most significant qubit. Coefficients are trace inner products
a_n = tr(P_n H) / 2^q, all real for Hermitian H.

Internally a string is a pair of bit masks over the 2^q basis indices:
flip = qubits carrying X or Y, m = qubits carrying Y or Z. Then

    P[i ^ flip, i] = i^{popcount(flip & m)} * (-1)^{popcount(i & m)}

is the single nonzero entry per column, which turns the full trace scan into
one Walsh-matrix product over the flip-gathered diagonals of H.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import ContractError, DimensionError
from .numerics import require_hermitian

_SYMBOLS = "IXYZ"
# symbol -> (flip bit, mask bit): I=(0,0) X=(1,0) Y=(1,1) Z=(0,1)
_FLIP_BIT = {"I": 0, "X": 1, "Y": 1, "Z": 0}
_MASK_BIT = {"I": 0, "X": 0, "Y": 1, "Z": 1}

DEFAULT_THRESHOLD = 1e-12


@dataclass
class PauliSum:
    """Thresholded expansion Sum_n a_n P_n of a Hermitian operator."""

    terms: list
    qubits: int
    threshold: float

    def __len__(self):
        return len(self.terms)

    def coefficient(self, label):
        for lab, a in self.terms:
            if lab == label:
                return a
        return 0.0


def _qubit_count(dim):
    q = dim.bit_length() - 1
    if dim < 2 or (1 << q) != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return q


def _walsh(q):
    h = np.array([[1.0, 1.0], [1.0, -1.0]])
    return reduce(np.kron, [h] * q)


def _string_masks(n_arr, q):
    """flip and m masks for base-4 string indices (lexicographic I<X<Y<Z)."""
    flip = np.zeros_like(n_arr)
    m = np.zeros_like(n_arr)
    for k in range(q):
        digit = (n_arr >> (2 * (q - 1 - k))) & 3
        bit = q - 1 - k
        flip |= ((digit == 1) | (digit == 2)).astype(n_arr.dtype) << bit
        m |= ((digit == 2) | (digit == 3)).astype(n_arr.dtype) << bit
    return flip, m


def _popcount(arr):
    out = np.zeros_like(arr)
    tmp = arr.copy()
    while np.any(tmp):
        out += tmp & 1
        tmp >>= 1
    return out


def _label(n, q):
    return "".join(_SYMBOLS[(n >> (2 * (q - 1 - k))) & 3] for k in range(q))


def decompose(H, threshold=DEFAULT_THRESHOLD):
    """Expand a Hermitian operator over all 4^q Pauli strings.

    Terms with |coefficient| <= threshold are dropped. Output order is
    lexicographic in the string label (I < X < Y < Z per qubit), which makes
    the expansion deterministic.
    """
    H = require_hermitian(H)
    dim = H.shape[0]
    q = _qubit_count(dim)
    idx = np.arange(dim)
    # G[:, flip] holds the generalized diagonal H[i ^ flip, i]
    G = np.empty((dim, dim), dtype=complex)
    for flip in range(dim):
        G[:, flip] = H[idx ^ flip, idx]
    # C[m, flip] = sum_i (-1)^{popcount(i & m)} H[i ^ flip, i]
    C = _walsh(q) @ G

    n_all = np.arange(4 ** q, dtype=np.int64)
    flip_all, m_all = _string_masks(n_all, q)
    n_y = _popcount(flip_all & m_all)
    phases = (-1j) ** (n_y % 4)
    raw = phases * C[m_all, flip_all] / dim
    imag_max = float(np.max(np.abs(raw.imag)))
    if imag_max > 1e-10:
        raise ContractError(f"complex Pauli coefficient (residue {imag_max:.3e}); input not Hermitian")
    coeffs = raw.real

    keep = np.abs(coeffs) > threshold
    terms = [(_label(int(n), q), float(coeffs[n])) for n in n_all[keep]]
    return PauliSum(terms=terms, qubits=q, threshold=threshold)


def _masks_from_label(label):
    flip = 0
    m = 0
    q = len(label)
    for k, ch in enumerate(label):
        if ch not in _SYMBOLS:
            raise ValueError(f"bad Pauli symbol {ch!r} in {label!r}")
        bit = q - 1 - k
        flip |= _FLIP_BIT[ch] << bit
        m |= _MASK_BIT[ch] << bit
    return flip, m


def reconstruct(psum):
    """Dense matrix Sum_n a_n P_n from a PauliSum."""
    dim = 2 ** psum.qubits
    idx = np.arange(dim)
    out = np.zeros((dim, dim), dtype=complex)
    for label, a in psum.terms:
        if len(label) != psum.qubits:
            raise DimensionError(f"label {label!r} does not have {psum.qubits} symbols")
        flip, m = _masks_from_label(label)
        signs = 1.0 - 2.0 * (_popcount(idx & m) & 1)
        phase = (1j) ** (bin(flip & m).count("1") % 4)
        out[idx ^ flip, idx] += a * phase * signs
    return out


def expectation(psum, state):
    """<psi| Sum a_n P_n |psi> without materializing any dense matrix."""
    state = np.asarray(state, dtype=complex).ravel()
    dim = 2 ** psum.qubits
    if state.size != dim:
        raise DimensionError(f"state has {state.size} amplitudes, expected {dim}")
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > 1e-10:
        raise ContractError(f"state norm {norm} deviates from 1 beyond 1e-10")
    idx = np.arange(dim)
    total = 0.0 + 0.0j
    for label, a in psum.terms:
        flip, m = _masks_from_label(label)
        signs = 1.0 - 2.0 * (_popcount(idx & m) & 1)
        phase = (1j) ** (bin(flip & m).count("1") % 4)
        total += a * phase * np.dot(np.conj(state[idx ^ flip]), signs * state[idx])
    if abs(total.imag) > 1e-10:
        raise ContractError(f"expectation has imaginary residue {total.imag:.3e}")
    return float(total.real)


def write_csv(psum, path):
    """Write `label,coefficient` rows in the deterministic term order."""
    with open(path, "w") as fh:
        fh.write("label,coefficient\n")
        for label, a in psum.terms:
            fh.write(f"{label},{a:.17g}\n")
