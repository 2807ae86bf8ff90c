"""Screened Casimir-Lifshitz free energy between parallel plates across a plasma."""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError  # noqa: E402
from .units import CONSTANTS, ReducedPoint, reduce_parameters  # noqa: E402
from .lifshitz import (  # noqa: E402
    EngineConfig,
    FreeEnergyBreakdown,
    correction_factor,
    free_energy_general,
    free_energy_ideal_plasma,
    free_energy_n0,
    free_energy_zero_temperature,
)
from .asymptotics import asym_n0, asym_npos, asym_total, eta_oracle  # noqa: E402
from .nuclear import energy_partition  # noqa: E402

__all__ = [
    "__version__",
    "CONSTANTS",
    "ConvergenceError",
    "DomainError",
    "EngineConfig",
    "FreeEnergyBreakdown",
    "ReducedPoint",
    "asym_n0",
    "asym_npos",
    "asym_total",
    "correction_factor",
    "energy_partition",
    "eta_oracle",
    "free_energy_general",
    "free_energy_ideal_plasma",
    "free_energy_n0",
    "free_energy_zero_temperature",
    "reduce_parameters",
]
