"""Physical constants and the dimensionless parameters of the plate problem.

All constants are CODATA 2018 values:

==============  ==========================  ==========
symbol          value                       unit
==============  ==========================  ==========
h               6.62607015e-34 (exact)      J s
c               299792458 (exact)           m/s
k_B             1.380649e-23 (exact)        J/K
e (for MeV)     1.602176634e-19 (exact)     C
m_e             9.1093837015e-31            kg
m_e c^2         0.51099895000               MeV
alpha           7.2973525693e-3
zeta(3)         1.2020569031595942
==============  ==========================  ==========

Formulas written in Gaussian units only ever need the squared charge, which is
derived as ``e^2 = alpha * hbar * c``; no charge constant is stored.
"""

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "ReducedPoint",
    "reduce_parameters",
    "dimensional_parameters",
    "density_to_plasma_frequency",
    "plasma_frequency_to_density",
    "check_finite",
    "check_nonnegative",
    "check_positive",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 6.62607015e-34 / (2.0 * math.pi)
    c: float = 299792458.0
    k_B: float = 1.380649e-23
    m_e: float = 9.1093837015e-31
    m_e_c2_MeV: float = 0.51099895000
    alpha: float = 7.2973525693e-3
    MeV: float = 1.602176634e-13
    fm: float = 1e-15
    zeta3: float = 1.2020569031595942

    @property
    def hbar_c(self):
        """hbar*c in J m."""
        return self.hbar * self.c

    @property
    def hbar_c_MeV_fm(self):
        return self.hbar_c / (self.MeV * self.fm)

    @property
    def k_B_MeV(self):
        """Boltzmann constant in MeV/K."""
        return self.k_B / self.MeV

    @property
    def e2(self):
        """Gaussian squared elementary charge, alpha*hbar*c, in J m."""
        return self.alpha * self.hbar_c


CONSTANTS = PhysicalConstants()


def check_finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(name, f"must be finite, got {value!r}")
    return value


def check_nonnegative(name, value):
    value = check_finite(name, value)
    if value < 0:
        raise DomainError(name, f"must be >= 0, got {value!r}")
    return value


def check_positive(name, value):
    value = check_finite(name, value)
    if value <= 0:
        raise DomainError(name, f"must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class ReducedPoint:
    """Dimensionless state of the ideal-mirror problem.

    Attributes
    ----------
    x : float
        ``2 k_B T l / (hbar c)``.
    kl : float
        Screening wavenumber times separation, ``kappa * l``.
    rho_bar : float
        Reduced density ``(kl / (pi x))**2``; ``inf`` at ``x == 0`` with
        ``kl > 0``.
    """

    x: float
    kl: float
    rho_bar: float

    @classmethod
    def from_x_kl(cls, x, kl):
        x = check_nonnegative("x", x)
        kl = check_nonnegative("kl", kl)
        if kl == 0.0:
            rho_bar = 0.0
        elif x == 0.0:
            rho_bar = math.inf
        else:
            rho_bar = (kl / (math.pi * x)) ** 2
        return cls(x, kl, rho_bar)


def reduce_parameters(l, T, omega_p, constants=CONSTANTS):
    """Convert separation (m), temperature (K) and plasma frequency (rad/s)
    into a :class:`ReducedPoint`."""
    l = check_positive("l", l)
    T = check_nonnegative("T", T)
    omega_p = check_nonnegative("omega_p", omega_p)
    x = 2.0 * constants.k_B * T * l / constants.hbar_c
    kl = omega_p / constants.c * l
    return ReducedPoint.from_x_kl(x, kl)


def dimensional_parameters(point, l, constants=CONSTANTS):
    """Inverse of :func:`reduce_parameters` at a given separation.

    Returns ``(T, omega_p)`` in K and rad/s.
    """
    l = check_positive("l", l)
    T = point.x * constants.hbar_c / (2.0 * constants.k_B * l)
    omega_p = point.kl * constants.c / l
    return T, omega_p


def density_to_plasma_frequency(rho, constants=CONSTANTS):
    """Plasma frequency ``sqrt(4 pi rho e^2 / m_e)`` for a number density in m^-3."""
    rho = check_nonnegative("rho", rho)
    return math.sqrt(4.0 * math.pi * rho * constants.e2 / constants.m_e)


def plasma_frequency_to_density(omega_p, constants=CONSTANTS):
    omega_p = check_nonnegative("omega_p", omega_p)
    return omega_p**2 * constants.m_e / (4.0 * math.pi * constants.e2)
