"""Closed-form asymptotes of the screened free energy and the theta-sum
representation used to cross-check the exact engine.

Large-separation forms (energies per area, all negative):

* zero-frequency term,
  ``-(k T kappa^2 / 2 pi) e^{-2 l kappa} [1/(2 l kappa) + 1/(4 l^2 kappa^2)]``
* nonzero frequencies,
  ``-((k T)^2 / (l hbar c)) e^{-pi rho_bar x} e^{-2 pi x}``,
  with ``pi rho_bar x`` evaluated as ``(kappa l)^2 / (pi x)``.

The theta representation writes ``eta = -4 pi l^2 F / (k T)`` as
``pi x^3 (I1 + I2)`` with

``I1 = int_0^inf e^{-pi rho_bar y} y^{-5/2} w(x^2/y) dy`` and
``I2 = int_0^inf e^{-pi rho_bar y} y^{-5/2} w(x^2/y) 2 w(y) dy``,

``w`` being :func:`~screened_casimir.specfun.omega_bar`.  ``I1`` reproduces
the zero-frequency term and ``I2`` the rest, so the quadrature is an
independent route to the exact sum.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError
from .lifshitz import free_energy_n0, ideal_zero_temperature_energy
from .specfun import DEFAULT_THETA_POLICY, ZETA3, _omega
from .units import CONSTANTS, ReducedPoint, check_nonnegative, check_positive

__all__ = [
    "AsymptoteBreakdown",
    "asym_n0",
    "asym_npos",
    "asym_total",
    "low_T_series",
    "pair_sea_term",
    "eta_oracle",
    "eta_parts",
    "eta1_quadrature",
    "eta1_identity_check",
    "eta2_saddle_point",
    "eta2_sandwich",
]


@dataclass(frozen=True)
class AsymptoteBreakdown:
    """High-x free energy: exact zero-frequency term plus the nonzero-frequency
    asymptote.

    ``asym_n0`` holds the exact n=0 integral that enters ``asym_total``;
    ``asym_n0_large_kl`` is its large-``kappa l`` closed form (``None`` when
    ``kappa = 0``).  ``validity["x_gt_1"]`` reports whether the saddle-point
    assumption ``x > 1`` holds.
    """

    asym_n0: float
    asym_npos: float
    asym_total: float
    asym_n0_large_kl: float
    low_T_terms: tuple
    validity: dict


def _point(l, T, kappa, constants):
    x = 2.0 * constants.k_B * T * l / constants.hbar_c
    return ReducedPoint.from_x_kl(x, kappa * l)


def asym_n0(l, T, kappa, constants=CONSTANTS):
    l = check_positive("l", l)
    T = check_positive("T", T)
    kappa = check_nonnegative("kappa", kappa)
    if kappa == 0.0:
        raise DomainError("kappa", "asymptote undefined at kappa = 0; "
                                   "use -zeta(3) k T / (8 pi l^2)")
    lk = l * kappa
    kT = constants.k_B * T
    return -(kT * kappa**2 / (2.0 * math.pi)) * math.exp(-2.0 * lk) * (
        1.0 / (2.0 * lk) + 1.0 / (4.0 * lk * lk)
    )


def asym_npos(l, T, kappa, constants=CONSTANTS):
    l = check_positive("l", l)
    T = check_positive("T", T)
    kappa = check_nonnegative("kappa", kappa)
    p = _point(l, T, kappa, constants)
    kT = constants.k_B * T
    exponent = p.kl**2 / (math.pi * p.x) + 2.0 * math.pi * p.x
    return -(kT**2) / (l * constants.hbar_c) * math.exp(-exponent)


def low_T_series(l, T, constants=CONSTANTS):
    """Vacuum-gap low-temperature terms ``(zero-point, T^3, T^4)`` in J/m^2.

    ``-pi^2 hbar c / 720 l^3``, ``-zeta(3) (kT)^3 / (2 pi (hbar c)^2)`` and
    ``+pi^2 l (kT)^4 / (45 (hbar c)^3)``.
    """
    l = check_positive("l", l)
    T = check_nonnegative("T", T)
    kT = constants.k_B * T
    hc = constants.hbar_c
    return (
        ideal_zero_temperature_energy(l, constants),
        -ZETA3 * kT**3 / (2.0 * math.pi * hc**2),
        math.pi**2 * l * kT**4 / (45.0 * hc**3),
    )


def pair_sea_term(T, constants=CONSTANTS):
    """``-pi (rho_- + rho_+) hbar c / 6`` with equilibrium pair densities.

    Identical to the ``T^3`` entry of :func:`low_T_series`.
    """
    from .nuclear import pair_density

    rho_each = pair_density(T, constants) / constants.fm**3
    return -math.pi * 2.0 * rho_each * constants.hbar_c / 6.0


def asym_total(l, T, kappa, constants=CONSTANTS):
    l = check_positive("l", l)
    T = check_positive("T", T)
    kappa = check_nonnegative("kappa", kappa)
    p = _point(l, T, kappa, constants)
    n0 = free_energy_n0(l, T, kappa, constants)
    npos = asym_npos(l, T, kappa, constants)
    if p.kl == 0.0:
        regime, closed = "none", None
    else:
        regime = "large" if p.kl >= 3.0 else "small"
        closed = asym_n0(l, T, kappa, constants)
    return AsymptoteBreakdown(
        asym_n0=n0,
        asym_npos=npos,
        asym_total=n0 + npos,
        asym_n0_large_kl=closed,
        low_T_terms=low_T_series(l, T, constants),
        validity={"x_gt_1": p.x > 1.0, "kl_regime": regime},
    )


# --- theta-sum representation ---------------------------------------------------


def _w(y):
    return float(_omega(np.asarray(y), DEFAULT_THETA_POLICY.crossover,
                        DEFAULT_THETA_POLICY.term_tolerance))


def _integrate(f, pieces, rtol):
    total, err = 0.0, 0.0
    for a, b in pieces:
        v, e, info, *msg = quad(f, a, b, epsabs=0.0, epsrel=rtol, limit=400, full_output=1)
        if msg and e > 1e3 * rtol * abs(v) and e > 1e-300:
            raise ConvergenceError(f"theta-integral quadrature failed on [{a}, {b}]",
                                   partial=v, bound=e, detail=msg[0])
        total += v
        err += e
    return total, err


def _check_x(point):
    if not point.x > 1.0:
        raise DomainError("x", f"theta representation assumes x > 1, got {point.x!r}")


def eta_parts(point, rtol=1e-10):
    """``(pi x^3 I1, pi x^3 I2)`` by quadrature split at ``y = 1`` and ``y = x^2``."""
    _check_x(point)
    x, rb = point.x, point.rho_bar
    x2 = x * x
    pieces = [(0.0, 1.0), (1.0, x2), (x2, math.inf)]

    def f1(y):
        if y == 0.0:
            return 0.0
        return math.exp(-math.pi * rb * y) * y**-2.5 * _w(x2 / y)

    def f2(y):
        if y == 0.0:
            return 0.0
        return math.exp(-math.pi * rb * y) * y**-2.5 * _w(x2 / y) * 2.0 * _w(y)

    i1, _ = _integrate(f1, pieces, rtol)
    i2, _ = _integrate(f2, pieces, rtol)
    pref = math.pi * x**3
    return pref * i1, pref * i2


def eta_oracle(point, rtol=1e-10):
    """``eta = pi x^3 (I1 + I2)``; equals ``-4 pi l^2 F / (k T)`` of the
    exact engine."""
    e1, e2 = eta_parts(point, rtol)
    return e1 + e2


def eta1_quadrature(point, rtol=1e-10):
    """``pi int_0^inf sqrt(y) exp(-pi rho_bar x^2 / y) w(y) dy``."""
    _check_x(point)
    c = math.pi * point.rho_bar * point.x**2

    def f(y):
        if y == 0.0:
            return 0.0
        damp = math.exp(-c / y) if c else 1.0
        return math.sqrt(y) * damp * _w(y)

    v, _ = _integrate(f, [(0.0, 1.0), (1.0, math.inf)], rtol)
    return math.pi * v


def eta1_identity_check(l, T, kappa, constants=CONSTANTS):
    """Relative deviation between the quadrature ``eta_1`` and the exact
    zero-frequency term ``-4 pi l^2 F_n0 / (k T)``."""
    l = check_positive("l", l)
    T = check_positive("T", T)
    kappa = check_nonnegative("kappa", kappa)
    p = _point(l, T, kappa, constants)
    target = -4.0 * math.pi * l * l * free_energy_n0(l, T, kappa, constants) / (constants.k_B * T)
    return abs(eta1_quadrature(p) / target - 1.0)


def eta2_saddle_point(point):
    """``2 pi x e^{-pi rho_bar x} e^{-2 pi x}``, the large-x form of the
    nonzero-frequency part of ``eta``."""
    x = point.x
    return 2.0 * math.pi * x * math.exp(-point.kl**2 / (math.pi * x) - 2.0 * math.pi * x)


def eta2_sandwich(point, rtol=1e-10):
    """Bounds on ``J = int_1^{x^2} y^{-5/2} e^{-pi rho_bar y} w(y) w(x^2/y) dy``.

    Returns ``(lower, J, upper)`` where the bounds replace each ``w(t)`` by
    ``e^{-pi t}`` and ``e^{-pi t} / (1 - e^{-2 pi t})`` respectively.
    """
    _check_x(point)
    x2, rb = point.x**2, point.rho_bar
    pieces = [(1.0, x2)]

    def base(y):
        return y**-2.5 * math.exp(-math.pi * rb * y)

    def lo(y):
        return base(y) * math.exp(-math.pi * y) * math.exp(-math.pi * x2 / y)

    def up(y):
        return lo(y) / (-math.expm1(-2.0 * math.pi * y) * -math.expm1(-2.0 * math.pi * x2 / y))

    def mid(y):
        return base(y) * _w(y) * _w(x2 / y)

    return (_integrate(lo, pieces, rtol)[0], _integrate(mid, pieces, rtol)[0],
            _integrate(up, pieces, rtol)[0])
