"""Dense numerical kernels: Hermitian eigensolver, cubic roots, quadrature, optimizer.

Everything here is pure and operates on plain numpy arrays. The eigensolver
is a cyclic Jacobi iteration, adequate and unconditionally stable for the
matrix sizes this package produces (up to 256x256).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ContractError, ConvergenceError, DimensionError, DomainError

HERMITICITY_TOL = 1e-10


@dataclass
class EigenDecomposition:
    """Eigenvalues ascending, eigenvectors as orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass
class OptimizerSettings:
    """Knobs for minimize_bounded.

    lower/upper may be scalars or per-parameter arrays; they are broadcast
    against x0. None means unbounded on that side.
    """

    max_iterations: int = 500
    gradient_tolerance: float = 1e-9
    memory_pairs: int = 10
    lower: object = None
    upper: object = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be at least 1")
        if not self.gradient_tolerance > 0:
            raise ConfigError("gradient_tolerance must be positive")
        if self.memory_pairs < 1:
            raise ConfigError("memory_pairs must be at least 1")


def require_hermitian(A, tol=HERMITICITY_TOL):
    """Validate that A is a square Hermitian matrix; return it as complex."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    dev = np.max(np.abs(A - A.conj().T))
    if dev >= tol:
        raise ContractError(f"matrix is not Hermitian: max |A - A^dag| = {dev:.3e} >= {tol:.1e}")
    return A


def eig_hermitian(A):
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : (n, n) array_like
        Hermitian matrix (validated to 1e-10 max deviation).

    Returns
    -------
    EigenDecomposition
        Eigenvalues ascending; eigenvector columns orthonormal, each with
        its first component of magnitude above 1e-12 rotated real-positive
        so the output is deterministic.
    """
    A = require_hermitian(A)
    n = A.shape[0]
    M = A.copy()
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return EigenDecomposition(np.zeros(n), V)
    # off-diagonal norm measured directly: the ||M||^2 - ||diag||^2 form
    # cancels catastrophically near convergence and stalls the vectors
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(60):
        off = np.linalg.norm(M[off_mask])
        if off <= 1e-13 * scale:
            break
        # skip rotations on entries already negligible this sweep
        thresh = off / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                if abs(apq) <= 1e-2 * thresh / n:
                    continue
                alpha = apq / abs(apq)
                tau = (M[q, q].real - M[p, p].real) / (2.0 * abs(apq))
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                cp = M[:, p].copy()
                cq = M[:, q].copy()
                M[:, p] = c * cp - s * np.conj(alpha) * cq
                M[:, q] = s * alpha * cp + c * cq
                rp = M[p, :].copy()
                rq = M[q, :].copy()
                M[p, :] = c * rp - s * alpha * rq
                M[q, :] = s * np.conj(alpha) * rp + c * rq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * np.conj(alpha) * vq
                V[:, q] = s * alpha * vp + c * vq
    w = np.real(np.diag(M))
    order = np.argsort(w, kind="stable")
    w = w[order]
    V = V[:, order]
    for k in range(n):
        col = V[:, k]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size:
            lead = col[nz[0]]
            V[:, k] = col * (np.conj(lead) / abs(lead))
    return EigenDecomposition(w, V)


def real_roots_cubic(c3, c2, c1, c0):
    """All real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending.

    Three-real-root cases go through the trigonometric closed form on the
    depressed cubic; the single-real-root case uses Cardano. Every root is
    polished by a few Newton steps. Multiple roots are returned with
    multiplicity.
    """
    if c3 == 0:
        raise DomainError("leading coefficient is zero: not a cubic")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    # depressed form t^3 + p t + q with x = t - b/3
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    disc = -4.0 * p ** 3 - 27.0 * q * q
    shift = -b / 3.0
    if disc >= -1e-14 * max(1.0, p * p * p * p, q * q):
        if p >= 0.0:
            # p ~ 0 with disc ~ 0: triple root
            roots = [np.cbrt(-q) + shift] * 3
        else:
            m = 2.0 * np.sqrt(-p / 3.0)
            arg = 3.0 * q / (p * m)
            arg = min(1.0, max(-1.0, arg))
            theta = np.arccos(arg) / 3.0
            roots = [m * np.cos(theta - 2.0 * np.pi * k / 3.0) + shift for k in range(3)]
    else:
        # one real root, Cardano
        half_q = q / 2.0
        rad = np.sqrt(half_q ** 2 + (p / 3.0) ** 3)
        roots = [np.cbrt(-half_q + rad) + np.cbrt(-half_q - rad) + shift]

    def poly(x):
        return ((c3 * x + c2) * x + c1) * x + c0

    def dpoly(x):
        return (3.0 * c3 * x + 2.0 * c2) * x + c1

    polished = []
    for r in roots:
        for _ in range(8):
            f = poly(r)
            if abs(f) <= 1e-12 * max(1.0, abs(r) ** 3 * abs(c3)):
                break
            df = dpoly(r)
            if df == 0.0:
                break
            step = f / df
            if not np.isfinite(step):
                break
            r = r - step
        polished.append(r)
    return np.sort(np.asarray(polished, dtype=float))


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def integrate_adaptive(f, a, b, rel_tol=1e-10, max_depth=48):
    """Adaptive Simpson quadrature of f on [a, b] to a relative tolerance.

    Interval halving continues until the local refinement change passes the
    standard |S2 - S1|/15 test against a tolerance apportioned by interval
    width. Raises ConvergenceError (carrying the best estimate) if the
    recursion depth cap is hit.
    """
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    scale = max(abs(whole), 1e-300)
    failed = []

    def recurse(a, fa, b, fb, mid, fmid, whole, tol, depth):
        lm, flm, left = _simpson(f, a, fa, mid, fmid)
        rm, frm, right = _simpson(f, mid, fmid, b, fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        if depth >= max_depth:
            failed.append(abs(delta))
            return left + right + delta / 15.0
        return (recurse(a, fa, mid, fmid, lm, flm, left, tol / 2.0, depth + 1)
                + recurse(mid, fmid, b, fb, rm, frm, right, tol / 2.0, depth + 1))

    result = recurse(a, fa, b, fb, m, fm, whole, rel_tol * scale, 0)
    if failed:
        raise ConvergenceError(
            f"quadrature hit depth {max_depth} on {len(failed)} subintervals",
            best_estimate=result,
        )
    return result


def _two_loop_direction(g, S, Y):
    d = -g
    k = len(S)
    rho = [1.0 / np.dot(Y[i], S[i]) for i in range(k)]
    alpha = [0.0] * k
    for i in range(k - 1, -1, -1):
        alpha[i] = rho[i] * np.dot(S[i], d)
        d -= alpha[i] * Y[i]
    d *= np.dot(S[-1], Y[-1]) / np.dot(Y[-1], Y[-1])
    for i in range(k):
        beta = rho[i] * np.dot(Y[i], d)
        d += (alpha[i] - beta) * S[i]
    return d


def minimize_bounded(f, grad, x0, settings=None):
    """Box-constrained limited-memory BFGS minimization.

    Search directions come from the standard two-loop recursion over stored
    curvature pairs; each trial point is projected onto the box, and the
    strong Wolfe line search works along the projected path (clipped
    coordinates contribute nothing to the directional derivative).

    Parameters
    ----------
    f, grad : callables
        Objective and its gradient.
    x0 : array_like
        Start point, must lie inside the box.
    settings : OptimizerSettings, optional

    Returns
    -------
    x : ndarray
        Final iterate (feasible, f(x) <= f(x0)).
    fx : float
        Objective at x.
    trace : list of (int, float)
        Best objective seen, per iteration; non-increasing by construction.
    """
    settings = settings or OptimizerSettings()
    x = np.asarray(x0, dtype=float).copy()
    lo = np.broadcast_to(np.asarray(-np.inf if settings.lower is None else settings.lower, float), x.shape)
    hi = np.broadcast_to(np.asarray(np.inf if settings.upper is None else settings.upper, float), x.shape)
    if np.any(lo > hi):
        raise ConfigError("lower bound exceeds upper bound")
    if np.any(x < lo) or np.any(x > hi):
        raise DomainError("x0 is outside the bounds")

    def project(z):
        return np.clip(z, lo, hi)

    fx = float(f(x))
    g = np.asarray(grad(x), dtype=float)
    if not np.all(np.isfinite(g)):
        return x, fx, [(0, fx)]
    S, Y = [], []
    best = fx
    trace = [(0, best)]
    c1, c2 = 1e-4, 0.9

    def probe(alpha, d):
        xn = project(x + alpha * d)
        fn = float(f(xn))
        gn = np.asarray(grad(xn), dtype=float)
        free = ((xn > lo) & (xn < hi)) | ((xn == lo) & (d > 0)) | ((xn == hi) & (d < 0))
        slope = float(np.dot(gn, np.where(free, d, 0.0)))
        return xn, fn, gn, slope

    def zoom(a_lo, f_lo, a_hi, fx, dphi0, d):
        for _ in range(30):
            a = 0.5 * (a_lo + a_hi)
            xn, fn, gn, dp = probe(a, d)
            if fn > fx + c1 * a * dphi0 or fn >= f_lo:
                a_hi = a
            else:
                if abs(dp) <= -c2 * dphi0:
                    return xn, fn, gn
                if dp * (a_hi - a_lo) >= 0:
                    a_hi = a_lo
                a_lo, f_lo = a, fn
            if abs(a_hi - a_lo) < 1e-16 * max(1.0, abs(a_lo)):
                return (xn, fn, gn) if fn < fx else None
        return (xn, fn, gn) if fn < fx else None

    for it in range(1, settings.max_iterations + 1):
        # projected-gradient stationarity on the box
        if np.max(np.abs(x - project(x - g))) <= settings.gradient_tolerance:
            break
        d = _two_loop_direction(g, S, Y) if S else -g
        dphi0 = float(np.dot(g, d))
        if dphi0 >= 0.0:
            d = -g
            dphi0 = float(np.dot(g, d))
            if dphi0 >= 0.0:
                break
        accepted = None
        a_prev, f_prev = 0.0, fx
        a = 1.0
        for j in range(25):
            xn, fn, gn, dp = probe(a, d)
            if fn > fx + c1 * a * dphi0 or (j > 0 and fn >= f_prev):
                accepted = zoom(a_prev, f_prev, a, fx, dphi0, d)
                break
            if abs(dp) <= -c2 * dphi0:
                accepted = (xn, fn, gn)
                break
            if dp >= 0.0:
                accepted = zoom(a, fn, a_prev, fx, dphi0, d)
                break
            a_prev, f_prev = a, fn
            a = min(2.0 * a, 1e3)
        else:
            accepted = (xn, fn, gn) if fn < fx else None
        if accepted is None:
            break
        xn, fn, gn = accepted
        if not np.all(np.isfinite(gn)):
            x, fx = xn, fn
            best = min(best, fx)
            trace.append((it, best))
            break
        s = xn - x
        y = gn - g
        sy = float(np.dot(s, y))
        if sy > 1e-10 * np.linalg.norm(s) * np.linalg.norm(y):
            S.append(s)
            Y.append(y)
            if len(S) > settings.memory_pairs:
                S.pop(0)
                Y.pop(0)
        x, fx, g = xn, fn, gn
        best = min(best, fx)
        trace.append((it, best))
    return x, fx, trace
