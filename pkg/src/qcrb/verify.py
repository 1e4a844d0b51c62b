"""Numerical solver versus closed forms, scenario by scenario."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_forms import SCENARIOS, Generators, ScenarioKey, StateKind, closed_fisher
from .fock import FockCutoff, PhysicalConstants
from .qfi import FisherBundle, GeneratorPair, fisher_matrices
from .states import (
    DEFAULT_MAX_TRUNCATION,
    ThermalParams,
    auto_cutoff,
    build_reference_state,
    thermal_params_from_kappas,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "CHECKED_MATRICES",
    "OracleRow",
    "default_thermal_params",
    "numeric_fisher",
    "relative_errors",
    "run_oracle_suite",
]

DEFAULT_TOLERANCE = 1e-6
CHECKED_MATRICES = ("g_s", "g_r", "z", "g_s_inv", "g_r_inv")


def default_thermal_params() -> ThermalParams:
    """``kappa_a^2 = 1``, ``kappa_b^2 = 1/2``: beta omega = ln 3, mu = ln 2, L0 = 1."""
    return thermal_params_from_kappas(1.0, 0.5)


@dataclass(frozen=True)
class OracleRow:
    scenario: str
    matrix: str
    max_rel_err: float
    tolerance: float
    cutoff: FockCutoff

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.tolerance

    def csv_fields(self) -> list[str]:
        return [
            self.scenario,
            self.matrix,
            f"{self.max_rel_err:.3e}",
            f"{self.tolerance:.1e}",
            "pass" if self.passed else "fail",
        ]


def _generators(key: ScenarioKey, cutoff, constants) -> GeneratorPair:
    if key.generators is Generators.CANONICAL:
        return GeneratorPair.canonical(cutoff, constants)
    return GeneratorPair.mechanical(cutoff, constants)


def numeric_fisher(
    key: ScenarioKey,
    constants: PhysicalConstants,
    params: ThermalParams | None = None,
    cutoff: FockCutoff | None = None,
    cutoff_bump: int = 0,
    max_truncation: float = DEFAULT_MAX_TRUNCATION,
) -> tuple[FisherBundle, FockCutoff]:
    key = ScenarioKey(key.generators, key.state)
    thermal = key.state is StateKind.THERMAL
    if cutoff is None:
        cutoff = auto_cutoff(params if thermal else None)
    if cutoff_bump:
        cutoff = cutoff.bumped(cutoff_bump)
    state = build_reference_state(params if thermal else "pure", cutoff, max_truncation)
    bundle = fisher_matrices(state, _generators(key, cutoff, constants))
    return bundle, cutoff


def relative_errors(numeric: FisherBundle, closed: FisherBundle) -> dict[str, float]:
    """``max|num - closed| / max|closed|`` for each reported matrix."""
    num, ref = numeric.matrices(), closed.matrices()
    out = {}
    for name in CHECKED_MATRICES:
        scale = np.max(np.abs(ref[name]))
        out[name] = float(np.max(np.abs(num[name] - ref[name])) / scale)
    return out


def run_oracle_suite(
    constants: PhysicalConstants | None = None,
    params: ThermalParams | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
    cutoff_bump: int = 0,
    scenarios=SCENARIOS,
) -> list[OracleRow]:
    """Compare every scenario with its closed form at the auto-sized cutoff."""
    constants = constants or PhysicalConstants()
    params = params or default_thermal_params()
    rows = []
    for key in scenarios:
        p = params if key.state is StateKind.THERMAL else None
        numeric, cutoff = numeric_fisher(key, constants, p, cutoff_bump=cutoff_bump)
        errs = relative_errors(numeric, closed_fisher(key, constants, p))
        for name in CHECKED_MATRICES:
            rows.append(OracleRow(key.name, name, errs[name], tolerance, cutoff))
    return rows
