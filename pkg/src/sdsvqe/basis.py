"""Position/momentum matrices in four truncated bases, and two-variable tensor pairs.

Conventions: per-variable truncation N = 2^(q/2); the u variable occupies the
left (most significant) tensor slot, so u = Q (x) I and v = I (x) Q. Qubit
index 0 is the most significant bit of a statevector index.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionError, UnsupportedBasisError


class BasisKind(str, Enum):
    OSCILLATOR = "oscillator"
    POSITION = "position"
    FINITE_DIFFERENCE = "finite_difference"
    LADDER = "ladder"


@dataclass
class VariablePair:
    """Tensor-product operators for the two minisuperspace variables."""

    u: np.ndarray
    v: np.ndarray
    p_u: np.ndarray
    p_v: np.ndarray
    qubits: int
    basis: BasisKind


def _require_dim(N):
    if N < 2:
        raise DimensionError(f"basis dimension must be at least 2, got {N}")


def q_osc(N):
    """Position operator in the harmonic oscillator number basis.

    Tridiagonal with off-diagonal entries sqrt(k)/sqrt(2), k = 1..N-1.
    """
    _require_dim(N)
    k = np.sqrt(np.arange(1, N)) / np.sqrt(2.0)
    return (np.diag(k, 1) + np.diag(k, -1)).astype(complex)


def p_osc(N):
    """Momentum operator in the oscillator basis: (i/sqrt(2)) (lower - raise)."""
    _require_dim(N)
    k = np.sqrt(np.arange(1, N)) / np.sqrt(2.0)
    return 1j * (np.diag(k, -1) - np.diag(k, 1))


def _sylvester(N):
    # centered discrete Fourier kernel; the (2j-(N+1)) shift matches q_pos
    j = 2.0 * np.arange(1, N + 1) - (N + 1)
    phase = np.outer(j, j) * (2.0 * np.pi / (4.0 * N))
    return np.exp(1j * phase) / np.sqrt(N)


def q_pos(N):
    """Diagonal position operator on the centered grid sqrt(2 pi / 4N) (2j-(N+1))."""
    _require_dim(N)
    j = 2.0 * np.arange(1, N + 1) - (N + 1)
    return np.diag(np.sqrt(2.0 * np.pi / (4.0 * N)) * j).astype(complex)


def p_pos(N):
    """Momentum in the position basis: F^dag q_pos F with F the centered Fourier kernel."""
    _require_dim(N)
    F = _sylvester(N)
    return F.conj().T @ q_pos(N) @ F


def q_fd(N):
    """Diagonal position operator of the finite difference basis."""
    _require_dim(N)
    j = 2.0 * np.arange(1, N + 1) - (N + 1)
    return np.diag(np.sqrt(1.0 / (2.0 * N)) * j).astype(complex)


def p2_fd(N):
    """Squared momentum as the (N/2)-scaled second difference with Dirichlet ends."""
    _require_dim(N)
    return (N / 2.0) * (2.0 * np.eye(N) - np.eye(N, k=1) - np.eye(N, k=-1)).astype(complex)


def p_fd(N):
    raise UnsupportedBasisError("finite difference basis provides only the squared momentum")


def ladder(N):
    """Annihilation/creation pair (A, A^dag) with A = (i P_osc + Q_osc)/sqrt(2)."""
    _require_dim(N)
    A = (1j * p_osc(N) + q_osc(N)) / np.sqrt(2.0)
    return A, A.conj().T


_QP_BUILDERS = {
    BasisKind.OSCILLATOR: lambda N: (q_osc(N), p_osc(N)),
    BasisKind.POSITION: lambda N: (q_pos(N), p_pos(N)),
    # the ladder basis reassembles Q and P from A, A^dag; numerically
    # identical to the oscillator pair
    BasisKind.LADDER: lambda N: _qp_from_ladder(N),
}


def _qp_from_ladder(N):
    A, Adag = ladder(N)
    Q = (A + Adag) / np.sqrt(2.0)
    P = (A - Adag) * (-1j / np.sqrt(2.0))
    return Q, P


def make_pair(qubits, basis=BasisKind.OSCILLATOR):
    """Assemble u, v, p_u, p_v on 2^q dimensions from single-variable Q, P.

    Parameters
    ----------
    qubits : int
        Total qubit count, even; each variable gets N = 2^(q/2) levels.
    basis : BasisKind
        Must supply a first-power momentum (finite difference does not).
    """
    if qubits % 2 != 0 or qubits < 2:
        raise DimensionError(f"qubit count must be even and >= 2, got {qubits}")
    basis = BasisKind(basis)
    if basis not in _QP_BUILDERS:
        raise UnsupportedBasisError(f"basis {basis.value} cannot build momentum pairs")
    N = 2 ** (qubits // 2)
    Q, P = _QP_BUILDERS[basis](N)
    eye = np.eye(N, dtype=complex)
    return VariablePair(
        u=np.kron(Q, eye),
        v=np.kron(eye, Q),
        p_u=np.kron(P, eye),
        p_v=np.kron(eye, P),
        qubits=qubits,
        basis=basis,
    )
