"""Smooth wavefunctions from oscillator coefficients, the WKB form, and plot grids.

A 2^q statevector reshapes into an N x N coefficient grid (N = 2^(q/2), u slot
most significant) whose smooth continuation is the two-variable Hermite
function expansion. The WKB wavefunction and the potential / mass-level
grids feed the figure-style data exports.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .model import mass_ab, potential_s, potential_sd

DEFAULT_EXTENT = 8.0
DEFAULT_SAMPLES = 161


@dataclass
class FieldGrid:
    """Rectangular sampling of a scalar field; axes strictly increasing."""

    u_axis: np.ndarray
    v_axis: np.ndarray
    values: np.ndarray
    allowed: np.ndarray = None

    def __post_init__(self):
        if np.any(np.diff(self.u_axis) <= 0) or np.any(np.diff(self.v_axis) <= 0):
            raise DomainError("grid axes must be strictly increasing")
        if self.values.shape != (self.u_axis.size, self.v_axis.size):
            raise DimensionError(
                f"values shape {self.values.shape} does not match axes "
                f"({self.u_axis.size}, {self.v_axis.size})")


@dataclass
class PotentialTable:
    """1-D potential sampling: x against the two potential branches."""

    x: np.ndarray
    v_s: np.ndarray
    v_sd: np.ndarray


def reshape_state(psi, qubits):
    """Statevector -> coefficient grid a[m, n] = psi[m 2^(q/2) + n]."""
    psi = np.asarray(psi, dtype=complex).ravel()
    if qubits % 2 != 0 or qubits < 2:
        raise DimensionError(f"qubit count must be even and >= 2, got {qubits}")
    if psi.size != 2 ** qubits:
        raise DimensionError(f"state size {psi.size} is not 2^{qubits}")
    N = 2 ** (qubits // 2)
    return psi.reshape(N, N)


def hermite_poly(k, x):
    """Physicists' Hermite polynomial by the upward recurrence."""
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if k == 0:
        return h_prev
    h = 2.0 * x
    for n in range(1, k):
        h, h_prev = 2.0 * x * h - 2.0 * n * h_prev, h
    return h


def _hermite_functions(x, count):
    """Columns phi_k(x) = H_k(x) exp(-x^2/2) / sqrt(sqrt(pi) 2^k k!), k < count."""
    x = np.asarray(x, dtype=float)
    out = np.empty((x.size, count))
    gauss = np.exp(-0.5 * x * x)
    h = np.ones_like(x)
    h_below = np.zeros_like(x)
    for k in range(count):
        norm = 1.0 / math.sqrt(math.sqrt(math.pi) * (2.0 ** k) * math.factorial(k))
        out[:, k] = h * gauss * norm
        h, h_below = 2.0 * x * h - 2.0 * k * h_below, h
    return out


def hermite_eval(grid, u, v):
    """Smooth wavefunction Psi(u, v) from the coefficient grid.

    Psi = Sum_{m,n} a[m,n] phi_m(u) phi_n(v) with normalized Hermite
    functions phi. Accepts scalars or broadcastable arrays.
    """
    grid = np.asarray(grid, dtype=complex)
    N = grid.shape[0]
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    v_arr = np.atleast_1d(np.asarray(v, dtype=float))
    if u_arr.shape != v_arr.shape:
        u_arr, v_arr = np.broadcast_arrays(u_arr, v_arr)
    flat_u = u_arr.ravel()
    flat_v = v_arr.ravel()
    phi_u = _hermite_functions(flat_u, N)
    phi_v = _hermite_functions(flat_v, N)
    values = np.einsum("pm,mn,pn->p", phi_u, grid, phi_v)
    values = values.reshape(u_arr.shape)
    if values.size == 1 and np.isscalar(u) and np.isscalar(v):
        return complex(values.ravel()[0])
    return values


def hermite_grid(grid, u_axis=None, v_axis=None):
    """FieldGrid of Psi over a rectangular (u, v) mesh."""
    if u_axis is None:
        u_axis = np.linspace(-DEFAULT_EXTENT, DEFAULT_EXTENT, DEFAULT_SAMPLES)
    if v_axis is None:
        v_axis = np.linspace(-DEFAULT_EXTENT, DEFAULT_EXTENT, DEFAULT_SAMPLES)
    grid = np.asarray(grid, dtype=complex)
    N = grid.shape[0]
    phi_u = _hermite_functions(np.asarray(u_axis, float), N)
    phi_v = _hermite_functions(np.asarray(v_axis, float), N)
    values = phi_u @ grid @ phi_v.T
    return FieldGrid(u_axis=np.asarray(u_axis, float),
                     v_axis=np.asarray(v_axis, float), values=values)


@dataclass
class WkbPoint:
    value: complex
    radicand: float
    allowed: bool
    turning: bool


def wkb(a, b, m, lam, radicand="cubic"):
    """Semiclassical wavefunction at one (a, b) point.

    The amplitude-phase form is sqrt(b^(-3/2)/rad) exp(i a b sqrt(rad)). The
    default radicand is the printed lam b^3/3 + 2m/b - 1; the "quadratic"
    variant lam b^2/3 + 2m/b - 1 (whose zeros are the horizon radii of the
    metric function) is kept for comparison. Negative radicands evaluate on
    the principal branch and are flagged classically forbidden; at a
    vanishing radicand the point is flagged as a turning point instead of
    returning an infinite amplitude.
    """
    if b <= 0:
        raise DomainError("b must be positive")
    if radicand == "cubic":
        rad = lam * b ** 3 / 3.0 + 2.0 * m / b - 1.0
    elif radicand == "quadratic":
        rad = lam * b ** 2 / 3.0 + 2.0 * m / b - 1.0
    else:
        raise ValueError(f"radicand must be 'cubic' or 'quadratic', got {radicand!r}")
    amp2 = b ** (-1.5)
    if rad == 0.0 or not np.isfinite(amp2 / abs(rad)):
        return WkbPoint(value=complex(float("nan"), float("nan")),
                        radicand=rad, allowed=False, turning=True)
    # divide in real arithmetic first: complex division writes a -0.0
    # imaginary part for negative ratios, putting sqrt on the wrong side
    # of the branch cut
    root = np.sqrt(complex(rad))
    value = np.sqrt(complex(amp2 / rad)) * np.exp(1j * a * b * root)
    return WkbPoint(value=complex(value), radicand=rad, allowed=rad > 0.0, turning=False)


def wkb_grid(a_axis, b_axis, m, lam, radicand="cubic"):
    """FieldGrid of the WKB wavefunction with the allowed-region mask attached."""
    a_axis = np.asarray(a_axis, float)
    b_axis = np.asarray(b_axis, float)
    values = np.empty((a_axis.size, b_axis.size), dtype=complex)
    allowed = np.zeros((a_axis.size, b_axis.size), dtype=bool)
    for i, av in enumerate(a_axis):
        for j, bv in enumerate(b_axis):
            point = wkb(av, bv, m, lam, radicand=radicand)
            values[i, j] = point.value
            allowed[i, j] = point.allowed
    return FieldGrid(u_axis=a_axis, v_axis=b_axis, values=values, allowed=allowed)


def potential_grid(lam, x_range=(-DEFAULT_EXTENT, DEFAULT_EXTENT), samples=DEFAULT_SAMPLES):
    """Sample both potentials V_S and V_SD over an x interval."""
    x = np.linspace(x_range[0], x_range[1], samples)
    return PotentialTable(x=x, v_s=potential_s(x), v_sd=potential_sd(x, lam))


def contour_grid_ab(M, lam, pa_range=(-6.0, 6.0), b_range=(0.05, 20.0), samples=DEFAULT_SAMPLES):
    """Mass function M(p_a, b) on a rectangular grid; level M is metadata for plots."""
    pa = np.linspace(pa_range[0], pa_range[1], samples)
    b = np.linspace(b_range[0], b_range[1], samples)
    values = mass_ab(pa[:, None], b[None, :], lam).astype(complex)
    return FieldGrid(u_axis=pa, v_axis=b, values=values)


def contour_grid_uv(M, lam, s_range=(-8.0, 8.0), x_range=(-8.0, 8.0), samples=DEFAULT_SAMPLES):
    """Level function 4M(s, x) = s^2/2 + V_SD(x) on a grid over momentum sum and u - v."""
    s = np.linspace(s_range[0], s_range[1], samples)
    x = np.linspace(x_range[0], x_range[1], samples)
    values = (0.5 * s[:, None] ** 2 + potential_sd(x[None, :], lam)).astype(complex)
    return FieldGrid(u_axis=s, v_axis=x, values=values)
