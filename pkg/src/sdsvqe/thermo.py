"""Classical Schwarzschild-de Sitter horizon thermodynamics.

With f(r) = 1 - 2M/r - r^2/ell^2 and ell^2 = 3/lambda, the horizon radii are
the positive roots of r^3 - ell^2 r + 2 M ell^2 = 0, given in closed
trigonometric form. Entropy is one quarter horizon area, S = pi r^2, and the
inverse temperature of each horizon is beta = dS/dM. Sign conventions follow
the series expansions: the cosmological horizon carries negative beta and T.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, NoHorizonError
from .model import nariai_mass
from .numerics import integrate_adaptive, real_roots_cubic

# treat the horizon pair as degenerate when the arccos argument is this
# close to 1; below it the cubic has a near-double root and both the trig
# formula and Newton polish lose the sqrt of machine precision
_DEGENERATE_MARGIN = 1e-12


@dataclass
class ThermoPoint:
    M: float
    lam: float
    ell: float
    r_bh: float
    r_ch: float
    S_bh: float
    S_ch: float
    S_tot: float
    beta_bh: float
    beta_ch: float
    T_bh: float
    T_ch: float


def _ell(lam):
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return math.sqrt(3.0 / lam)


def _r_trig(M, ell, sign):
    arg = math.sqrt(27.0) * M / ell
    arg = min(1.0, max(-1.0, arg))
    return (2.0 * ell / math.sqrt(3.0)) * math.cos((math.pi + sign * math.acos(arg)) / 3.0)


def horizons(M, lam):
    """Black hole and cosmological horizon radii (r_bh, r_ch).

    Valid for 0 < M <= M_N = 1/(3 sqrt(lambda)); at the Nariai bound both
    radii coincide at 1/sqrt(lambda). The trigonometric values are Newton
    polished and cross-checked against the generic cubic solver.
    """
    if M <= 0:
        raise DomainError("mass must be positive")
    ell = _ell(lam)
    arg = math.sqrt(27.0) * M / ell
    if arg > 1.0 + 1e-12:
        raise NoHorizonError(
            f"M = {M} exceeds the Nariai mass {nariai_mass(lam)}: no horizons")
    if arg >= 1.0 - _DEGENERATE_MARGIN:
        r_n = ell / math.sqrt(3.0)
        return r_n, r_n
    r_bh = _r_trig(M, ell, +1.0)
    r_ch = _r_trig(M, ell, -1.0)

    # polish on p(r) = r^3 - ell^2 r + 2 M ell^2
    def polish(r):
        for _ in range(4):
            p = (r * r - ell * ell) * r + 2.0 * M * ell * ell
            dp = 3.0 * r * r - ell * ell
            if dp == 0.0:
                break
            step = p / dp
            r -= step
            if abs(step) < 1e-15 * max(1.0, abs(r)):
                break
        return r

    r_bh = polish(r_bh)
    r_ch = polish(r_ch)
    roots = real_roots_cubic(1.0, 0.0, -ell * ell, 2.0 * M * ell * ell)
    if len(roots) == 3:
        dev = max(abs(r_bh - roots[1]), abs(r_ch - roots[2]))
        if dev > 1e-9 * max(1.0, ell):
            raise ContractError(
                f"trig and cubic horizon values disagree by {dev:.3e}")
    return r_bh, r_ch


def entropies(M, lam):
    """Horizon entropies (S_bh, S_ch, S_tot), one quarter area each."""
    r_bh, r_ch = horizons(M, lam)
    s_bh = math.pi * r_bh * r_bh
    s_ch = math.pi * r_ch * r_ch
    return s_bh, s_ch, s_bh + s_ch


def inverse_temperatures(M, lam):
    """beta = dS/dM per horizon, from the implicit cubic derivative.

    dr/dM = -2 ell^2 / (3 r^2 - ell^2) gives beta = -4 pi ell^2 r / (3 r^2 - ell^2),
    positive for the black hole horizon and negative for the cosmological one.
    At the Nariai mass the denominators vanish: returns (+inf, -inf).
    """
    ell = _ell(lam)
    r_bh, r_ch = horizons(M, lam)
    if r_ch - r_bh < 1e-12 * ell:
        return math.inf, -math.inf

    def beta(r):
        return -4.0 * math.pi * ell * ell * r / (3.0 * r * r - ell * ell)

    return beta(r_bh), beta(r_ch)


def temperatures(M, lam):
    """(T_bh, T_ch) = 1/beta per horizon; exactly (0.0, 0.0) at the Nariai mass."""
    beta_bh, beta_ch = inverse_temperatures(M, lam)
    if math.isinf(beta_bh):
        return 0.0, 0.0
    return 1.0 / beta_bh, 1.0 / beta_ch


def thermo_point(M, lam):
    """Assemble every horizon quantity at one (M, lambda) point."""
    ell = _ell(lam)
    r_bh, r_ch = horizons(M, lam)
    s_bh, s_ch, s_tot = entropies(M, lam)
    beta_bh, beta_ch = inverse_temperatures(M, lam)
    t_bh, t_ch = temperatures(M, lam)
    return ThermoPoint(M=M, lam=lam, ell=ell, r_bh=r_bh, r_ch=r_ch,
                       S_bh=s_bh, S_ch=s_ch, S_tot=s_tot,
                       beta_bh=beta_bh, beta_ch=beta_ch, T_bh=t_bh, T_ch=t_ch)


def sweep(lam, masses):
    """ThermoPoint per mass value; masses must lie in (0, M_N]."""
    return [thermo_point(float(M), lam) for M in masses]


@dataclass
class SeriesExpansions:
    S_bh: float
    S_ch: float
    T_bh: float
    T_ch: float
    beta_bh: float
    beta_ch: float


def series_expansions(M, lam):
    """Small-M truncations of the horizon quantities, exactly as displayed:

        S_bh    = 4 pi M^2 + 32 pi M^4 / ell^2
        S_ch    = pi ell^2 - 2 pi M ell
        T_bh    = 1/(8 pi M) - 2 M / (pi ell^2)     (+inf at M = 0)
        T_ch    = -1/(2 pi ell) + M / (pi ell^2)
        beta_bh = 8 pi M + 128 pi M^3 / ell^2
        beta_ch = -2 pi ell - 4 pi M
    """
    if M < 0:
        raise DomainError("mass must be non-negative")
    ell = _ell(lam)
    ell2 = ell * ell
    t_bh = math.inf if M == 0 else 1.0 / (8.0 * math.pi * M) - 2.0 * M / (math.pi * ell2)
    return SeriesExpansions(
        S_bh=4.0 * math.pi * M * M + 32.0 * math.pi * M ** 4 / ell2,
        S_ch=math.pi * ell2 - 2.0 * math.pi * M * ell,
        T_bh=t_bh,
        T_ch=-1.0 / (2.0 * math.pi * ell) + M / (math.pi * ell2),
        beta_bh=8.0 * math.pi * M + 128.0 * math.pi * M ** 3 / ell2,
        beta_ch=-2.0 * math.pi * ell - 4.0 * math.pi * M,
    )


def _r_bh_closed(M, ell):
    # no positivity guard: the partition integrand touches M = 0
    if M == 0.0:
        return 0.0
    return _r_trig(M, ell, +1.0)


def partition_function(beta, lam=3.0, rel_tol=1e-10):
    """Z(beta) = integral_0^{1/sqrt(27)} exp(S_bh(M)) exp(-beta M) dM at lambda = 3.

    The ell = 1 normalization is part of the definition; other lambda values
    are rejected. Converges for every real beta since the integrand is
    bounded on the closed interval.
    """
    if lam != 3.0:
        raise DomainError("the partition function is defined at lambda = 3 (ell = 1)")
    # substitute M = r/2 - r^3/2 (the horizon condition at ell = 1):
    # dM/dr = (1 - 3 r^2)/2 vanishes smoothly at the degenerate radius,
    # removing the sqrt singularity that M-space quadrature hits there
    r_n = 1.0 / math.sqrt(3.0)

    def integrand(r):
        m = 0.5 * r - 0.5 * r ** 3
        return math.exp(math.pi * r * r - beta * m) * 0.5 * (1.0 - 3.0 * r * r)

    return integrate_adaptive(integrand, 0.0, r_n, rel_tol=rel_tol)
