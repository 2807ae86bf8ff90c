"""Casimir-Lifshitz free energy between two identical parallel plates.

Two engines are provided:

* :func:`free_energy_ideal_plasma` -- perfect mirrors across a collisionless
  plasma.  After substituting ``t = sqrt(q^2 + a_n^2)`` every Matsubara term
  is a closed series (:func:`~screened_casimir.specfun.log_tail_integral`),
  so the sum is accurate to rounding.
* :func:`free_energy_general` -- arbitrary mirror and gap models, with the
  in-plane wavenumber integral done by adaptive quadrature.

Both report energies per unit area in J/m^2.  The Matsubara sum is cut off
where an a-priori tail bound drops below the requested relative tolerance.
The bound uses ``|ln(1 - r^2 e^{-2 gamma l})| <= |ln(1 - e^{-2 gamma l})|``
together with ``gamma >= sqrt(q^2 + (xi/c)^2 + kappa^2)``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .dielectric import (
    Divergence,
    Drude,
    Material,
    PerfectMetal,
    Plasma,
    Tabulated,
    Vacuum,
    eval_epsilon,
)
from .errors import ConvergenceError, DomainError
from .specfun import ZETA3, log_tail_integral
from .units import (
    CONSTANTS,
    check_nonnegative,
    check_positive,
    reduce_parameters,
)

__all__ = [
    "EngineConfig",
    "DEFAULT_CONFIG",
    "FreeEnergyBreakdown",
    "ReducedSum",
    "matsubara_frequency",
    "gamma_coeff",
    "fresnel",
    "mode_condition",
    "reduced_free_energy",
    "free_energy_ideal_plasma",
    "free_energy_n0",
    "free_energy_general",
    "free_energy_zero_temperature",
    "ideal_zero_temperature_energy",
    "correction_factor",
]

_EPS = np.finfo(float).eps
# exp(-_EXP_CUT) is far below any tolerance we work at
_EXP_CUT = 60.0


@dataclass(frozen=True)
class EngineConfig:
    rel_tolerance: float = 1e-10
    max_matsubara: int = 20_000_000
    quadrature_rel_tol: float = 1e-11

    def __post_init__(self):
        check_positive("rel_tolerance", self.rel_tolerance)
        check_positive("quadrature_rel_tol", self.quadrature_rel_tol)
        if int(self.max_matsubara) < 1:
            raise DomainError("max_matsubara", "must be >= 1")


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class FreeEnergyBreakdown:
    """Free energy per area and its zero / nonzero Matsubara split.

    ``F_total`` is computed as ``F_n0 + F_npos``.  ``est_error`` bounds the
    truncation plus quadrature error of ``F_total`` (J/m^2).
    """

    F_total: float
    F_n0: float
    F_npos: float
    correction_factor: float
    n_terms: int
    est_error: float


@dataclass(frozen=True)
class ReducedSum:
    """Dimensionless ``eta = -4 pi l^2 F / (k_B T)`` split into n=0 and n>0."""

    eta_n0: float
    eta_npos: float
    n_terms: int
    tail_bound: float

    @property
    def eta(self):
        return self.eta_n0 + self.eta_npos


def matsubara_frequency(n, T, constants=CONSTANTS):
    """``xi_n = 2 pi n k_B T / hbar`` in rad/s."""
    if int(n) != n or n < 0:
        raise DomainError("n", f"must be a non-negative integer, got {n!r}")
    T = check_positive("T", T)
    return 2.0 * math.pi * int(n) * constants.k_B * T / constants.hbar


def ideal_zero_temperature_energy(l, constants=CONSTANTS):
    """``-pi^2 hbar c / (720 l^3)``: ideal mirrors in vacuum at T = 0."""
    l = check_positive("l", l)
    return -(math.pi**2) * constants.hbar_c / (720.0 * l**3)


def correction_factor(F, l, constants=CONSTANTS):
    """Energy divided by the ideal zero-temperature Casimir energy."""
    return F / ideal_zero_temperature_energy(l, constants)


# --- reflection ---------------------------------------------------------------


def _offset(eps, xi, c):
    """``eps * (xi/c)^2`` with the exact xi -> 0 limit for divergent eps."""
    if isinstance(eps, Divergence):
        return eps.strength / c**2 if eps.order == 2 else 0.0
    if math.isinf(eps):
        return math.inf
    return eps * (xi / c) ** 2


def gamma_coeff(q, eps, xi, constants=CONSTANTS):
    """Perpendicular decay constant ``sqrt(q^2 + eps xi^2 / c^2)`` in 1/m."""
    q = check_nonnegative("q", q)
    xi = check_nonnegative("xi", xi)
    if not isinstance(eps, Divergence) and not eps >= 1.0:
        raise DomainError("eps", f"must be >= 1, got {eps!r}")
    return math.sqrt(q * q + _offset(eps, xi, constants.c))


def _tm_divergent(eps_1, eps_2, g1, g2):
    # at least one side diverges at xi = 0; compare leading orders
    o1 = eps_1.order if isinstance(eps_1, Divergence) else 0
    o2 = eps_2.order if isinstance(eps_2, Divergence) else 0
    if o2 > o1:
        return 1.0
    if o1 > o2:
        return -1.0
    num = eps_2.strength * g1 - eps_1.strength * g2
    return num / (eps_2.strength * g1 + eps_1.strength * g2)


def _reflection(k, eps_1, off_1, eps_2, off_2):
    """Reflection coefficients from scaled wavenumber ``k`` and the offsets
    ``eps_i (xi/c)^2`` in the same scaling."""
    if isinstance(eps_2, float) and math.isinf(eps_2):
        return 1.0, -1.0
    g1 = math.sqrt(k * k + off_1)
    g2 = math.sqrt(k * k + off_2)
    r_te = (g1 - g2) / (g1 + g2)
    if isinstance(eps_1, Divergence) or isinstance(eps_2, Divergence):
        r_tm = _tm_divergent(eps_1, eps_2, g1, g2)
    else:
        r_tm = (eps_2 * g1 - eps_1 * g2) / (eps_2 * g1 + eps_1 * g2)
    return r_tm, r_te


def _as_eps(name, eps):
    if isinstance(eps, Divergence):
        return eps
    eps = float(eps)
    if math.isnan(eps) or eps < 1.0:
        raise DomainError(name, f"must be >= 1 or a divergence sentinel, got {eps!r}")
    return eps


def fresnel(q, xi, eps_1, eps_2, constants=CONSTANTS):
    """TM and TE reflection coefficients at the gap/plate interface.

    ``eps_1`` is the gap medium and ``eps_2`` the plate.  ``eps_2 = inf``
    gives a perfect mirror, ``(1, -1)``.  :class:`Divergence` values at
    ``xi = 0`` are resolved analytically: a diverging plate gives
    ``r_tm = 1``; ``r_te`` follows from the limiting decay constants, which
    makes it vanish for a Drude-like plate.
    """
    q = check_nonnegative("q", q)
    xi = check_nonnegative("xi", xi)
    if q == 0.0 and xi == 0.0:
        raise DomainError("q", "reflection is indeterminate at q = xi = 0")
    eps_1 = _as_eps("eps_1", eps_1)
    eps_2 = _as_eps("eps_2", eps_2)
    if isinstance(eps_1, float) and math.isinf(eps_1):
        raise DomainError("eps_1", "gap medium cannot be a perfect conductor")
    c = constants.c
    return _reflection(q, eps_1, _offset(eps_1, xi, c), eps_2, _offset(eps_2, xi, c))


def mode_condition(q, xi, d, r, eps_gap=1.0, constants=CONSTANTS):
    """``f_q = 1 - exp(-2 gamma d) r^2`` with ``gamma`` taken in the gap."""
    d = check_positive("d", d)
    if abs(r) > 1.0:
        raise DomainError("r", f"|r| must be <= 1, got {r!r}")
    gamma = gamma_coeff(q, eps_gap, xi, constants)
    return 1.0 - r * r * math.exp(-2.0 * gamma * d)


# --- ideal mirrors across a plasma ---------------------------------------------


def _tail_bound(x, two_kl, n_last):
    """Upper bound on ``sum_{n > n_last} |g(u_n)|`` with
    ``u_n = hypot(2 pi n x, 2 kl)``, using ``|g(u)| <= zeta(3) (u+1) e^{-u}``."""
    b = 2.0 * math.pi * x
    explicit = 64
    n = np.arange(n_last + 1, n_last + explicit + 1, dtype=float)
    u = np.hypot(b * n, two_kl)
    head = ZETA3 * float(np.sum((u + 1.0) * np.exp(-u)))
    # beyond the explicit block use u_n >= b n and a closed geometric form
    m = n_last + explicit
    r = math.exp(-b)
    one_minus_r = -math.expm1(-b)
    if m * b > 700.0:
        return head
    r_m1 = r ** (m + 1)
    s0 = r_m1 / one_minus_r
    s1 = r_m1 * ((m + 1) - m * r) / one_minus_r**2
    return head + ZETA3 * (b * s1 + s0)


def reduced_free_energy(point, cfg=DEFAULT_CONFIG):
    """``eta = -4 pi l^2 F / (k_B T)`` for perfect mirrors across a plasma.

    ``eta = -sum'_n g(2 pi x sqrt(n^2 + rho_bar))`` with the n = 0 term halved.
    Requires ``point.x > 0``.
    """
    x, kl = point.x, point.kl
    if not x > 0:
        raise DomainError("x", "must be > 0 for the Matsubara sum")
    tol = cfg.rel_tolerance
    two_kl = 2.0 * kl
    n_max = int(math.ceil(math.log(1.0 / tol) / (2.0 * math.pi * x))) + 4
    while True:
        if n_max > cfg.max_matsubara:
            partial = _reduced_terms(x, two_kl, min(cfg.max_matsubara, n_max))
            raise ConvergenceError(
                f"Matsubara cutoff {n_max} exceeds max_matsubara={cfg.max_matsubara}",
                partial=-(0.5 * partial[0] + float(np.sum(partial[1:]))),
                bound=_tail_bound(x, two_kl, cfg.max_matsubara),
            )
        g = _reduced_terms(x, two_kl, n_max)
        eta_n0 = -0.5 * float(g[0])
        eta_npos = -float(np.sum(g[1:]))
        bound = _tail_bound(x, two_kl, n_max)
        if bound <= tol * abs(eta_n0 + eta_npos):
            return ReducedSum(eta_n0, eta_npos, n_max + 1, bound)
        n_max *= 2


def _reduced_terms(x, two_kl, n_max):
    n = np.arange(0, n_max + 1, dtype=float)
    return log_tail_integral(np.hypot(2.0 * math.pi * x * n, two_kl))


def _thermal_scale(l, T, constants):
    """``k_B T / (4 pi l^2)``: converts eta to an energy per area."""
    return constants.k_B * T / (4.0 * math.pi * l * l)


def free_energy_ideal_plasma(l, T, omega_p, cfg=DEFAULT_CONFIG, constants=CONSTANTS):
    """Free energy of perfect mirrors across a dissipation-free plasma.

    Each Matsubara term is ``(k_B T / pi) g(2 l a_n) / (4 l^2)`` with
    ``a_n = sqrt((xi_n/c)^2 + kappa^2)`` and the n = 0 term halved.
    """
    l = check_positive("l", l)
    T = check_positive("T", T)
    omega_p = check_nonnegative("omega_p", omega_p)
    point = reduce_parameters(l, T, omega_p, constants)
    scale = _thermal_scale(l, T, constants)
    try:
        s = reduced_free_energy(point, cfg)
    except ConvergenceError as exc:
        # report in J/m^2 like the general engine
        raise ConvergenceError(str(exc), partial=-scale * exc.partial,
                               bound=scale * exc.bound) from None
    F_n0 = -scale * s.eta_n0
    F_npos = -scale * s.eta_npos
    F_total = F_n0 + F_npos
    rounding = math.log2(s.n_terms + 1) * _EPS * (abs(F_n0) + abs(F_npos))
    return FreeEnergyBreakdown(
        F_total=F_total,
        F_n0=F_n0,
        F_npos=F_npos,
        correction_factor=correction_factor(F_total, l, constants),
        n_terms=s.n_terms,
        est_error=scale * s.tail_bound + rounding,
    )


def free_energy_n0(l, T, kappa, constants=CONSTANTS):
    """Zero-frequency term ``(k_B T / 2 pi) int_kappa^inf t ln(1 - e^{-2 l t}) dt``."""
    l = check_positive("l", l)
    T = check_positive("T", T)
    kappa = check_nonnegative("kappa", kappa)
    return constants.k_B * T / (2.0 * math.pi) * log_tail_integral(2.0 * l * kappa) / (4.0 * l * l)


# --- general engine -----------------------------------------------------------


def _plate_eps(mirror, xi):
    if isinstance(mirror, PerfectMetal):
        return math.inf
    if isinstance(mirror, Material):
        return eval_epsilon(mirror.medium, xi)
    raise TypeError(f"unknown mirror model {mirror!r}")


def _gap_kappa(medium, constants):
    if isinstance(medium, Plasma):
        return medium.omega_p / constants.c
    return 0.0


def _check_models(mirror, medium):
    if not isinstance(mirror, (PerfectMetal, Material)):
        raise TypeError(f"unknown mirror model {mirror!r}")
    if not isinstance(medium, (Vacuum, Plasma, Drude, Tabulated)):
        raise TypeError(f"unknown medium model {medium!r}")


def _quad(func, a, b, rtol, where):
    value, abserr, info, *msg = quad(func, a, b, epsabs=0.0, epsrel=rtol, limit=200, full_output=1)
    if msg and abserr > 1e3 * rtol * abs(value) and abserr > 1e-300:
        last = info["last"]
        worst = int(np.argmax(info["elist"][:last]))
        interval = (float(info["alist"][worst]), float(info["blist"][worst]))
        raise ConvergenceError(
            f"quadrature did not converge ({where}); worst subinterval {interval}",
            partial=value,
            bound=abserr,
            detail={"worst_subinterval": interval, "message": msg[0]},
        )
    return value, abserr


def _wavenumber_integral(two_l, xi, mirror, medium, rtol, constants):
    """``int_0^inf s [ln f_TM + ln f_TE] ds`` in the scaled variable ``s = 2 l q``.

    Returns ``(value, abserr)``; dimensionless.
    """
    c = constants.c
    eps_g = eval_epsilon(medium, xi)
    eps_p = _plate_eps(mirror, xi)
    off_g = two_l**2 * _offset(eps_g, xi, c)
    off_p = two_l**2 * _offset(eps_p, xi, c) if not (isinstance(eps_p, float) and math.isinf(eps_p)) else math.inf
    if not isinstance(eps_g, Divergence):
        eps_g = float(eps_g)
    a = math.sqrt(off_g)

    def log_modes(s, decay):
        r_tm, r_te = _reflection(s, eps_g, off_g, eps_p, off_p)
        e = math.exp(-decay)
        return math.log1p(-r_tm * r_tm * e) + math.log1p(-r_te * r_te * e)

    if a > 0.0:
        # s = a sinh(u), 2 gamma l = a cosh(u); s ds = a^2 sinh(u) cosh(u) du
        u_max = math.acosh(1.0 + _EXP_CUT / a)

        def integrand(u):
            sh, ch = math.sinh(u), math.cosh(u)
            return a * a * sh * ch * log_modes(a * sh, a * ch)

        return _quad(integrand, 0.0, u_max, rtol, f"xi={xi:g}")

    def integrand_s(s):
        if s == 0.0:
            return 0.0
        return s * log_modes(s, s)

    return _quad(integrand_s, 0.0, _EXP_CUT, rtol, f"xi={xi:g}")


def free_energy_general(l, T, mirror, medium, cfg=DEFAULT_CONFIG, constants=CONSTANTS):
    """Free energy for arbitrary mirror and gap models by Matsubara summation
    of a quadrature over the in-plane wavenumber."""
    l = check_positive("l", l)
    T = check_positive("T", T)
    _check_models(mirror, medium)
    two_l = 2.0 * l
    kappa = _gap_kappa(medium, constants)
    point = reduce_parameters(l, T, kappa * constants.c, constants)
    x, two_kl = point.x, 2.0 * point.kl
    # eta-scale: F = -(k_B T / 4 pi l^2) * eta, and the s-integral equals
    # 2 * (contribution to -eta) per term.
    scale = _thermal_scale(l, T, constants)
    rtol = cfg.quadrature_rel_tol
    terms = []
    quad_err = 0.0
    n = 0
    while True:
        xi = matsubara_frequency(n, T, constants)
        value, err = _wavenumber_integral(two_l, xi, mirror, medium, rtol, constants)
        weight = 0.25 if n == 0 else 0.5
        terms.append(weight * value)
        quad_err += weight * err
        partial = math.fsum(terms)
        bound = _tail_bound(x, two_kl, n)
        if bound <= cfg.rel_tolerance * abs(partial) or bound <= 1e-30:
            break
        n += 1
        if n > cfg.max_matsubara:
            raise ConvergenceError(
                f"Matsubara cutoff exceeds max_matsubara={cfg.max_matsubara}",
                partial=scale * partial,
                bound=scale * bound,
            )
    F_n0 = scale * terms[0]
    F_npos = scale * math.fsum(terms[1:])
    F_total = F_n0 + F_npos
    return FreeEnergyBreakdown(
        F_total=F_total,
        F_n0=F_n0,
        F_npos=F_npos,
        correction_factor=correction_factor(F_total, l, constants),
        n_terms=len(terms),
        est_error=scale * (bound + quad_err),
    )


def free_energy_zero_temperature(l, mirror, medium, cfg=DEFAULT_CONFIG, constants=CONSTANTS):
    """Zero-temperature interaction energy per area from the frequency integral
    ``hbar int d^2q/(2pi)^2 int_0^inf dxi/(2pi) ln f_q(i xi)``."""
    l = check_positive("l", l)
    _check_models(mirror, medium)
    two_l = 2.0 * l
    c = constants.c
    rtol = cfg.quadrature_rel_tol

    def inner(w):
        # w = 2 l xi / c
        value, _ = _wavenumber_integral(two_l, w * c / two_l, mirror, medium, rtol, constants)
        return value

    # decay is at least e^{-w}; split so the peak region near w ~ 1 is resolved
    total, err = 0.0, 0.0
    for a, b in ((0.0, 2.0), (2.0, 10.0), (10.0, _EXP_CUT)):
        v, e = _quad(inner, a, b, max(rtol, 1e-10), "frequency integral")
        total += v
        err += e
    return constants.hbar_c / (32.0 * math.pi**2 * l**3) * total
