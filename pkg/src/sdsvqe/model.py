"""Minisuperspace operators 2bH and 4M, scalar mass function, and potentials.

The quantum operators act on two bosonic variables u, v truncated to
N = 2^(q/2) levels each:

    2bH = 1/2 (p_u^2 - p_v^2) + 1/2 (u^2 - v^2) - (lam/32) (u^2 - v^2)(u - v)^4
    4M  = 1/2 (p_u + p_v)^2  + 1/2 (u - v)^2   - (lam/96) (u - v)^6

Physical states are annihilated by 2bH; on those states 4M measures four
times the black hole mass. Units G = c = hbar = 1 throughout.
"""

from dataclasses import dataclass, field

import numpy as np

from .basis import BasisKind, VariablePair, make_pair
from .errors import ConfigError, ContractError, DomainError, UnsupportedBasisError

SUPPORTED_QUBITS = (2, 4, 6, 8, 10)


@dataclass
class ModelConfig:
    lam: float = 0.01
    qubits: int = 4
    basis: BasisKind = BasisKind.OSCILLATOR

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigError(f"lambda must be non-negative, got {self.lam}")
        if self.qubits not in SUPPORTED_QUBITS:
            raise ConfigError(f"qubits must be one of {SUPPORTED_QUBITS}, got {self.qubits}")
        self.basis = BasisKind(self.basis)


@dataclass
class OperatorPair:
    hamiltonian_2bh: np.ndarray
    mass_4m: np.ndarray
    config: ModelConfig
    variables: VariablePair = field(repr=False, default=None)


def _hermitize(H, tol=1e-12):
    dev = np.max(np.abs(H - H.conj().T))
    if dev >= tol:
        raise ContractError(f"constructed operator not Hermitian: {dev:.3e}")
    return 0.5 * (H + H.conj().T)


def build_operators(config):
    """Construct the Hamiltonian-constraint and mass operators for a config.

    Only bases with a first-power momentum work here; the finite difference
    basis cannot represent the p_u p_v cross term of (p_u + p_v)^2.
    """
    if config.basis == BasisKind.FINITE_DIFFERENCE:
        raise UnsupportedBasisError(
            "finite difference basis lacks first-power momenta for the cross terms")
    pair = make_pair(config.qubits, config.basis)
    u, v, pu, pv = pair.u, pair.v, pair.p_u, pair.p_v
    lam = config.lam

    x = u - v
    x2 = x @ x
    x4 = x2 @ x2
    x6 = x4 @ x2
    uv2 = u @ u - v @ v

    # (u^2 - v^2) and (u - v)^4 commute exactly (both are polynomials in the
    # commuting slot operators); the symmetric average only pins floating
    # point Hermiticity of their product.
    quartic = 0.5 * (uv2 @ x4 + x4 @ uv2)
    h2b = 0.5 * (pu @ pu - pv @ pv) + 0.5 * uv2 - (lam / 32.0) * quartic

    psum = pu + pv
    m4 = 0.5 * (psum @ psum) + 0.5 * x2 - (lam / 96.0) * x6

    return OperatorPair(
        hamiltonian_2bh=_hermitize(h2b),
        mass_4m=_hermitize(m4),
        config=config,
        variables=pair,
    )


def mass_ab(p_a, b, lam):
    """Classical mass function M(p_a, b) = p_a^2/(2b) + b/2 - lam b^3/6."""
    b = np.asarray(b, dtype=float)
    if np.any(b <= 0):
        raise DomainError("b must be positive")
    return np.asarray(p_a, dtype=float) ** 2 / (2.0 * b) + b / 2.0 - lam * b ** 3 / 6.0


def potential_s(x):
    """Schwarzschild potential x^2 / 2 in the variable x = u - v."""
    x = np.asarray(x, dtype=float)
    return 0.5 * x * x


def potential_sd(x, lam):
    """Schwarzschild-de Sitter potential x^2/2 - (lam/96) x^6.

    Its maximum over x > 0 sits at x = (16/lam)^(1/4) with value
    (4/3)/sqrt(lam), the Nariai value of 4M.
    """
    x = np.asarray(x, dtype=float)
    return 0.5 * x * x - (lam / 96.0) * x ** 6


def nariai_mass(lam):
    """Largest mass with horizons: M_N = 1/(3 sqrt(lam))."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return 1.0 / (3.0 * np.sqrt(lam))


def commutator_norm(pair):
    """Max-norm of [2bH, 4M] at the pair's truncation.

    The continuum operators commute; the truncated matrices do not, and the
    raw norm grows with the operator norms themselves. Recorded as a
    diagnostic, never asserted zero.
    """
    H, M = pair.hamiltonian_2bh, pair.mass_4m
    return float(np.max(np.abs(H @ M - M @ H)))
