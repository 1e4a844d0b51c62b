"""Quantum Cramér-Rao bounds for locating an electron in a uniform magnetic field."""

__version__ = "0.1.0"

from .closed_forms import ScenarioKey, closed_fisher
from .fock import FockCutoff, OperatorMatrix, PhysicalConstants
from .qfi import FisherBundle, GeneratorPair, fisher_matrices
from .states import (
    ThermalParams,
    build_reference_state,
    solve_chemical_potential,
    thermal_params_from,
    thermal_params_from_kappas,
)

__all__ = [
    "FisherBundle",
    "FockCutoff",
    "GeneratorPair",
    "OperatorMatrix",
    "PhysicalConstants",
    "ScenarioKey",
    "ThermalParams",
    "build_reference_state",
    "closed_fisher",
    "fisher_matrices",
    "solve_chemical_potential",
    "thermal_params_from",
    "thermal_params_from_kappas",
]
