"""Ry variational form on a dense statevector, with exact parameter-shift gradients.

The circuit is depth repetitions of [Ry rotation layer; CX entangling block]
followed by one final rotation layer, acting on |0...0>. All amplitudes stay
real because Ry and CX are real matrices. Qubit 0 is the most significant
bit of the amplitude index.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError
from .pauli import PauliSum, expectation as pauli_expectation


@dataclass
class AnsatzSpec:
    qubits: int
    depth: int = 3
    entanglement: str = "full"

    def __post_init__(self):
        if self.qubits < 1:
            raise DimensionError("need at least one qubit")
        if self.depth < 0:
            raise DimensionError("depth must be non-negative")
        if self.entanglement not in ("full", "linear"):
            raise ValueError(f"unknown entanglement pattern {self.entanglement!r}")

    @property
    def parameter_count(self):
        return self.qubits * (self.depth + 1)

    def entangling_pairs(self):
        """Ordered CX (control, target) pairs of one entangling block."""
        if self.entanglement == "full":
            return [(i, j) for i in range(self.qubits) for j in range(i + 1, self.qubits)]
        return [(i, i + 1) for i in range(self.qubits - 1)]


@dataclass
class AnsatzState:
    parameters: np.ndarray
    amplitudes: np.ndarray


def _apply_ry(state, qubit, theta):
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    view = state.reshape(2 ** qubit, 2, -1)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1


def _apply_cx(state, qubits, ctrl, targ):
    view = state.reshape([2] * qubits)
    pick = [slice(None)] * qubits
    pick[ctrl] = 1
    sub = view[tuple(pick)]
    # indexing removed the control axis; target axis shifts down past it
    t = targ - 1 if targ > ctrl else targ
    sel0 = [slice(None)] * (qubits - 1)
    sel1 = [slice(None)] * (qubits - 1)
    sel0[t] = 0
    sel1[t] = 1
    tmp = sub[tuple(sel0)].copy()
    sub[tuple(sel0)] = sub[tuple(sel1)]
    sub[tuple(sel1)] = tmp


def prepare(spec, theta):
    """Run the circuit and return the prepared state.

    Raises an arity error when len(theta) differs from qubits*(depth+1), and
    validates the unit-norm and real-amplitude invariants of the Ry/CX family.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != spec.parameter_count:
        raise DimensionError(
            f"expected {spec.parameter_count} parameters for q={spec.qubits}, "
            f"depth={spec.depth}; got {theta.size}")
    state = np.zeros(2 ** spec.qubits, dtype=complex)
    state[0] = 1.0
    pairs = spec.entangling_pairs()
    pos = 0
    for _ in range(spec.depth):
        for k in range(spec.qubits):
            _apply_ry(state, k, theta[pos])
            pos += 1
        for ctrl, targ in pairs:
            _apply_cx(state, spec.qubits, ctrl, targ)
    for k in range(spec.qubits):
        _apply_ry(state, k, theta[pos])
        pos += 1
    norm_dev = abs(np.linalg.norm(state) - 1.0)
    if norm_dev > 1e-12:
        raise ContractError(f"state norm drifted by {norm_dev:.3e}")
    imag_max = float(np.max(np.abs(state.imag)))
    if imag_max > 1e-12:
        raise ContractError(f"Ry/CX state grew imaginary parts up to {imag_max:.3e}")
    return AnsatzState(parameters=theta.copy(), amplitudes=state)


def expectation_of(spec, theta, operator):
    """<psi(theta)| O |psi(theta)> for a dense matrix or a PauliSum."""
    state = prepare(spec, theta).amplitudes
    if isinstance(operator, PauliSum):
        return pauli_expectation(operator, state)
    operator = np.asarray(operator)
    if operator.shape != (state.size, state.size):
        raise DimensionError(
            f"operator shape {operator.shape} does not match {state.size} amplitudes")
    value = complex(np.vdot(state, operator @ state))
    return float(value.real)


def gradient(spec, theta, operator):
    """Exact gradient by the parameter-shift rule, one +-pi/2 pair per angle."""
    theta = np.asarray(theta, dtype=float).ravel()
    grad = np.empty(theta.size)
    for k in range(theta.size):
        shifted = theta.copy()
        shifted[k] += 0.5 * math.pi
        plus = expectation_of(spec, shifted, operator)
        shifted[k] -= math.pi
        minus = expectation_of(spec, shifted, operator)
        grad[k] = 0.5 * (plus - minus)
    return grad
