"""Dielectric response on the imaginary frequency axis.

``eval_epsilon`` returns a plain float except at ``xi = 0`` for the plasma and
Drude models, where the permittivity diverges.  There it returns a
:class:`Divergence` describing the leading behaviour ``strength / xi**order``
so the reflection layer can take the exact limit instead of working with an
infinity.  The two orders give different TE reflection at zero frequency,
which is the whole difference between the plasma and Drude descriptions of a
metal.
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError
from .units import check_nonnegative, check_positive

__all__ = [
    "Vacuum",
    "Plasma",
    "Drude",
    "Tabulated",
    "MediumModel",
    "PerfectMetal",
    "Material",
    "MirrorModel",
    "Divergence",
    "eval_epsilon",
    "load_dielectric_table",
    "TableFormatError",
]


@dataclass(frozen=True)
class Vacuum:
    pass


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        check_nonnegative("omega_p", self.omega_p)


@dataclass(frozen=True)
class Drude:
    omega_p: float
    gamma: float

    def __post_init__(self):
        check_nonnegative("omega_p", self.omega_p)
        check_positive("gamma", self.gamma)


@dataclass(frozen=True)
class Tabulated:
    """Sampled ``eps(i xi)``, interpolated linearly in ``(log xi, log eps)``
    and clamped to the end values outside the sampled range."""

    xi: tuple
    eps: tuple

    def __post_init__(self):
        xi = tuple(float(v) for v in self.xi)
        eps = tuple(float(v) for v in self.eps)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eps", eps)
        if len(xi) != len(eps):
            raise DomainError("samples", "xi and eps lengths differ")
        if len(xi) < 2:
            raise DomainError("samples", "need at least 2 samples")
        for i, (a, e) in enumerate(zip(xi, eps)):
            if not (math.isfinite(a) and a > 0):
                raise DomainError("xi", f"sample {i} must be positive and finite")
            if not (math.isfinite(e) and e >= 1.0):
                raise DomainError("eps", f"sample {i} must be >= 1, got {e!r}")
        for i in range(1, len(xi)):
            if xi[i] <= xi[i - 1]:
                raise DomainError("xi", f"sample {i} is not strictly increasing")
        object.__setattr__(self, "_log_xi", np.log(xi))
        object.__setattr__(self, "_log_eps", np.log(eps))


MediumModel = Union[Vacuum, Plasma, Drude, Tabulated]


@dataclass(frozen=True)
class PerfectMetal:
    pass


@dataclass(frozen=True)
class Material:
    medium: MediumModel


MirrorModel = Union[PerfectMetal, Material]


@dataclass(frozen=True)
class Divergence:
    """Permittivity that diverges as ``strength / xi**order`` when ``xi -> 0``.

    ``order == 2`` is plasma-like (``strength = omega_p**2``), ``order == 1``
    Drude-like (``strength = omega_p**2 / gamma``).
    """

    order: int
    strength: float


def eval_epsilon(model, xi):
    """Permittivity ``eps(i xi)`` of ``model`` at imaginary frequency ``xi``."""
    xi = check_nonnegative("xi", xi)
    if isinstance(model, Vacuum):
        return 1.0
    if isinstance(model, Plasma):
        if model.omega_p == 0.0:
            return 1.0
        if xi == 0.0:
            return Divergence(2, model.omega_p**2)
        return 1.0 + (model.omega_p / xi) ** 2
    if isinstance(model, Drude):
        if model.omega_p == 0.0:
            return 1.0
        if xi == 0.0:
            return Divergence(1, model.omega_p**2 / model.gamma)
        return 1.0 + model.omega_p**2 / (xi * (xi + model.gamma))
    if isinstance(model, Tabulated):
        if xi <= model.xi[0]:
            return model.eps[0]
        if xi >= model.xi[-1]:
            return model.eps[-1]
        return float(np.exp(np.interp(math.log(xi), model._log_xi, model._log_eps)))
    raise TypeError(f"unknown medium model {model!r}")


class TableFormatError(DomainError):
    def __init__(self, line, message):
        self.line = line
        super().__init__("medium-file", f"line {line}: {message}")


def load_dielectric_table(stream):
    """Parse a ``xi_rad_s,eps`` CSV (text stream or string) into a
    :class:`Tabulated` model.

    Lines starting with ``#`` and blank lines are skipped.  Errors carry the
    1-based line number of the offending row.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    xi, eps = [], []
    header_seen = False
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        row = next(csv.reader([line]))
        if not header_seen:
            if [c.strip() for c in row] != ["xi_rad_s", "eps"]:
                raise TableFormatError(lineno, "expected header 'xi_rad_s,eps'")
            header_seen = True
            continue
        if len(row) != 2:
            raise TableFormatError(lineno, f"expected 2 columns, got {len(row)}")
        try:
            a, e = float(row[0]), float(row[1])
        except ValueError:
            raise TableFormatError(lineno, f"cannot parse {line!r}") from None
        if not (math.isfinite(a) and a > 0):
            raise TableFormatError(lineno, "xi must be a positive number")
        if not (math.isfinite(e) and e >= 1.0):
            raise TableFormatError(lineno, f"eps must be >= 1, got {e!r}")
        if xi and a <= xi[-1]:
            raise TableFormatError(lineno, "xi not strictly increasing")
        xi.append(a)
        eps.append(e)
    if not header_seen:
        raise TableFormatError(0, "empty table")
    if len(xi) < 2:
        raise TableFormatError(lineno, "need at least 2 samples")
    return Tabulated(tuple(xi), tuple(eps))
