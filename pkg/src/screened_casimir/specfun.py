"""Theta-type sums, zeta values and the logarithmic tail integral.

The theta sum ``omega_bar(y) = sum_{n>=1} exp(-n^2 pi y)`` converges quickly
for large ``y``; below a crossover it is evaluated through the Jacobi
(Poisson) transform ``omega_bar(y) = (-1 + y**-0.5 * (1 + 2 omega_bar(1/y))) / 2``.

Zeta-type sums are computed by a direct head sum plus an Euler-Maclaurin
tail, so their truncation error is bounded a priori rather than detected by
watching partial sums stall.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError
from .units import check_finite, check_nonnegative, check_positive

__all__ = [
    "ThetaEvalPolicy",
    "DEFAULT_THETA_POLICY",
    "omega_bar",
    "omega_bar_direct",
    "omega_bar_bounds",
    "jacobi_s2",
    "riemann_zeta",
    "epstein_hurwitz_zeta",
    "log_tail_integral",
]

ZETA3 = 1.2020569031595942

# B_2, B_4, ..., B_60
_B2K = bernoulli(60)[2::2].astype(float)
_FACT2K = np.array([math.factorial(2 * k) for k in range(1, len(_B2K) + 1)], dtype=float)


@dataclass(frozen=True)
class ThetaEvalPolicy:
    """Branch selection for :func:`omega_bar`.

    ``crossover`` is the argument at and above which the direct sum is used;
    ``term_tolerance`` is the absolute truncation tolerance.
    """

    crossover: float = 1.0
    term_tolerance: float = 1e-13

    def __post_init__(self):
        check_positive("crossover", self.crossover)
        check_positive("term_tolerance", self.term_tolerance)


DEFAULT_THETA_POLICY = ThetaEvalPolicy()


def _direct_terms(y_min, tol):
    # smallest N with exp(-(N+1)^2 pi y) / (1 - exp(-2 (N+1) pi y)) <= tol
    n = 1
    while True:
        head = math.exp(-((n + 1) ** 2) * math.pi * y_min)
        ratio = -math.expm1(-2.0 * (n + 1) * math.pi * y_min)
        if head <= tol * ratio:
            return n
        n += 1


def _omega_direct(y, tol):
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        return np.zeros_like(y)
    n_max = _direct_terms(float(np.min(y)), tol)
    n2 = np.arange(1, n_max + 1, dtype=float) ** 2
    terms = np.exp(-np.pi * np.multiply.outer(y, n2))
    return terms.sum(axis=-1)


def _omega(y, crossover, tol):
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    big = y >= crossover
    if np.any(big):
        out[big] = _omega_direct(y[big], tol)
    small = ~big
    if np.any(small):
        ys = y[small]
        inner_tol = tol * math.sqrt(float(np.min(ys)))
        dual = _omega_direct(1.0 / ys, inner_tol)
        out[small] = 0.5 * (-1.0 + (1.0 + 2.0 * dual) / np.sqrt(ys))
    return out


def _check_theta_arg(y):
    arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("y", "must be finite")
    if np.any(arr <= 0):
        raise DomainError("y", "must be > 0")
    return arr


def omega_bar(y, policy=DEFAULT_THETA_POLICY):
    """Theta sum ``sum_{n>=1} exp(-n^2 pi y)`` for scalar or array ``y > 0``."""
    arr = _check_theta_arg(y)
    out = _omega(arr, policy.crossover, policy.term_tolerance)
    return float(out) if np.ndim(y) == 0 else out


def omega_bar_direct(y, tol=1e-15):
    """Theta sum by direct summation on every argument, never the dual form.

    Costs ``O(sqrt(log(1/tol) / y))`` terms; used as an oracle for the dual
    branch.
    """
    arr = _check_theta_arg(y)
    out = _omega_direct(arr, tol)
    return float(out) if np.ndim(y) == 0 else out


def omega_bar_bounds(y):
    """Return ``(exp(-pi y), exp(-pi y) / (1 - exp(-2 pi y)))``.

    The theta sum lies strictly between the two for every ``y > 0``.
    """
    y = check_positive("y", y)
    lower = math.exp(-math.pi * y)
    return lower, lower / -math.expm1(-2.0 * math.pi * y)


def jacobi_s2(t, dual=False):
    """``S2(t) = sum_{n>=1} exp(-n^2 t)``.

    With ``dual=True`` the Poisson-Jacobi transformed series
    ``-1/2 + sqrt(pi/t)/2 + sqrt(pi/t) sum exp(-pi^2 n^2 / t)`` is summed
    instead.
    """
    t = check_positive("t", t)
    if not dual:
        return omega_bar_direct(t / math.pi)
    root = math.sqrt(math.pi / t)
    return -0.5 + 0.5 * root + root * omega_bar_direct(math.pi / t)


def _shifted_power_sum(z, a):
    """``sum_{n>=1} (n^2 + a)^(-z)`` for ``z > 1/2``, ``a >= 0``.

    Head summed directly; tail from Euler-Maclaurin applied to the expansion
    ``(t^2 + a)^-z = sum_j binom(-z, j) a^j t^(-2z-2j)``, which converges for
    ``t > sqrt(a)``.
    """
    n_cut = max(32, int(math.ceil(4.0 * math.sqrt(a))) + 1)
    n = np.arange(1, n_cut, dtype=float)
    head = math.fsum((n * n + a) ** (-z))

    tail = 0.0
    coef = 1.0
    ratio = a / n_cut**2
    for j in range(80):
        if j > 0:
            coef *= -(z + j - 1) / j * a
        p = 2.0 * z + 2.0 * j
        scale = coef * n_cut ** (-p)
        piece = n_cut / (p - 1.0) + 0.5
        # Euler-Maclaurin derivative corrections for t^-p at t = n_cut
        rising = p
        power = 1.0 / n_cut
        for k in range(1, 9):
            # f^(2k-1)(N) = -(p)_(2k-1) N^(-p-2k+1)
            piece += _B2K[k - 1] / _FACT2K[k - 1] * rising * power
            rising *= (p + 2 * k - 1) * (p + 2 * k)
            power /= n_cut * n_cut
        term = scale * piece
        tail += term
        if j > 0 and abs(term) <= 1e-18 * abs(head + tail):
            break
        if ratio == 0.0:
            break
    return head + tail


def riemann_zeta(s):
    """Riemann zeta ``sum n^-s`` for real ``s > 1``."""
    s = check_finite("s", s)
    if s <= 1.0:
        raise DomainError("s", f"must be > 1, got {s!r}")
    return _shifted_power_sum(0.5 * s, 0.0)


def epstein_hurwitz_zeta(z, a, include_a_term=True):
    """Generalized Epstein-Hurwitz zeta ``2 sum_{n>=1} (n^2+a)^-z + a^-z``.

    Only the convergent half-line ``z > 1/2`` is supported; the meromorphic
    continuation (simple poles at ``z = 1/2 - k``) is not implemented.
    ``include_a_term=False`` drops the ``a^-z`` term, leaving twice the plain
    Epstein-Hurwitz sum.
    """
    z = check_finite("z", z)
    a = check_nonnegative("a", a)
    if z <= 0.5:
        raise DomainError("z", f"out of domain (needs z > 1/2, got {z!r}); "
                               "analytic continuation is not implemented")
    total = 2.0 * _shifted_power_sum(z, a)
    if include_a_term:
        if a == 0.0:
            raise DomainError("a", "a^-z term is singular at a = 0")
        total += a ** (-z)
    return total


_SMALL_U = 2.0


def _g_small(u):
    # -zeta(3) - int_0^u t ln(1 - e^-t) dt using
    # ln(1 - e^-t) = ln t - t/2 + sum_k B_2k t^2k / (2k (2k)!), |t| < 2 pi
    u = np.asarray(u, dtype=float)
    u2 = u * u
    with np.errstate(divide="ignore", invalid="ignore"):
        logpart = np.where(u > 0, 0.5 * u2 * np.log(np.where(u > 0, u, 1.0)), 0.0)
    acc = logpart - 0.25 * u2 - u2 * u / 6.0
    power = u2 * u2  # u^(2k+2) for k = 1
    for k in range(1, len(_B2K) + 1):
        c = _B2K[k - 1] / (2 * k * _FACT2K[k - 1] * (2 * k + 2))
        term = c * power
        acc = acc + term
        if np.all(np.abs(term) <= 1e-18):
            break
        power = power * u2
    return -ZETA3 - acc


def _g_large(u):
    u = np.asarray(u, dtype=float)
    u_min = float(np.min(u)) if u.size else 1.0
    # tail after M terms is below e^{-(M+1)u}(...)/(1-e^{-u}): M u >= 40 suffices
    m_max = int(math.ceil(40.0 / u_min)) + 1
    acc = np.zeros_like(u)
    for m in range(m_max, 0, -1):
        acc += np.exp(-m * u) * (m * u + 1.0) / m**3
    return -acc


def log_tail_integral(u0):
    """``g(u0) = int_{u0}^inf u ln(1 - e^-u) du`` for scalar or array ``u0 >= 0``.

    Uses ``-sum_m e^{-m u0} (m u0 + 1) / m^3`` for ``u0 >= 2`` and the
    Bernoulli expansion of ``ln(1 - e^-u)`` about zero below that, where the
    exponential series converges too slowly. ``g(0) = -zeta(3)``.
    """
    arr = np.asarray(u0, dtype=float)
    if not np.all(np.isfinite(arr) | (arr == np.inf)) or np.any(np.isnan(arr)):
        raise DomainError("u0", "must not be NaN")
    if np.any(arr < 0):
        raise DomainError("u0", "must be >= 0")
    out = np.zeros_like(arr)
    small = arr < _SMALL_U
    if np.any(small):
        out[small] = _g_small(arr[small])
    large = ~small & np.isfinite(arr)
    if np.any(large):
        out[large] = _g_large(arr[large])
    return float(out) if np.ndim(u0) == 0 else out
