"""Schwarzschild-de Sitter minisuperspace toolkit.

Builds the Hamiltonian-constraint (2bH) and mass (4M) operators of the
Kantowski-Sachs / Schwarzschild-de Sitter minisuperspace in truncated qubit
bases, solves the constrained spectrum exactly and with a gate-level VQE,
and evaluates the classical horizon thermodynamics.
"""

__version__ = "0.1.0"

from . import ansatz, basis, model, numerics, pauli, spectrum, thermo, vqe, wavefn  # noqa: F401
from .basis import BasisKind, make_pair  # noqa: F401
from .model import ModelConfig, build_operators, nariai_mass  # noqa: F401
from .numerics import OptimizerSettings, eig_hermitian, integrate_adaptive, minimize_bounded, real_roots_cubic  # noqa: F401
from .pauli import PauliSum, decompose, reconstruct  # noqa: F401
from .spectrum import constrained_spectrum, full_spectrum  # noqa: F401
from .vqe import run_vqe  # noqa: F401
