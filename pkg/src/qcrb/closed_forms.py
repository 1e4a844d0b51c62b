"""Analytic Fisher matrices, logarithmic derivatives and Z matrices.

All formulas are written in terms of ``lam^2 = 2/eB`` and the thermal
parameters ``kappa_a^2``, ``kappa_b^2``.  Shorthand used below:
``na = 2 kappa_a^2`` and ``nb = 2 kappa_b^2`` (mean occupations).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .fock import FockCutoff, OperatorMatrix, PhysicalConstants, commutator
from .fock import canonical_operators, ladder_operators
from .qfi import FisherBundle, OrderingCase
from .states import ThermalParams, pure_lll_state

__all__ = [
    "Generators",
    "StateKind",
    "ScenarioKey",
    "SCENARIOS",
    "closed_fisher",
    "closed_sld_rld_operators",
    "sld_position_momentum_coefficients",
    "sld_from_position_momentum",
    "delta_g",
    "delta_v_rs",
    "ordering_eigenvalues",
]

_I2 = np.eye(2)
# [[0, i], [-i, 0]]
_SIGMA = np.array([[0, 1j], [-1j, 0]])


class Generators(str, enum.Enum):
    CANONICAL = "canonical"
    MECHANICAL = "mechanical"


class StateKind(str, enum.Enum):
    PURE = "pure"
    THERMAL = "thermal"


@dataclass(frozen=True)
class ScenarioKey:
    generators: Generators
    state: StateKind

    def __post_init__(self):
        object.__setattr__(self, "generators", Generators(self.generators))
        object.__setattr__(self, "state", StateKind(self.state))

    @property
    def name(self) -> str:
        return f"{self.generators.value}-{self.state.value}"


SCENARIOS = tuple(ScenarioKey(g, s) for g in Generators for s in StateKind)


def _require_thermal(params):
    if not isinstance(params, ThermalParams):
        raise ValueError("thermal scenario requires ThermalParams")


def delta_g(constants: PhysicalConstants, params: ThermalParams) -> float:
    """``g_S^11 - g_R^11 = (lam^2/2) / (1 + na + nb)`` for the canonical thermal model."""
    return 0.5 * constants.lam_sq / (1 + params.n_a + params.n_b)


def delta_v_rs(constants: PhysicalConstants, params: ThermalParams) -> float:
    """Offset of the RLD/SLD intersection from the SLD corner, ``dg (4 L0^2 - 1)``.

    Positive values mean both bounds shape the allowed region.
    """
    return delta_g(constants, params) * (4 * params.L0**2 - 1)


def ordering_eigenvalues(constants: PhysicalConstants, params: ThermalParams):
    """Eigenvalues ``dg (1 -+ 2 L0)`` of ``G_S^{-1} - G_R^{-1}`` (canonical thermal)."""
    dg = delta_g(constants, params)
    return np.array([dg * (1 - 2 * abs(params.L0)), dg * (1 + 2 * abs(params.L0))])


def _canonical_pure(lam_sq):
    g_s = (2 / lam_sq) * _I2
    inv = (lam_sq / 2) * _I2
    return FisherBundle.assemble(
        g_s,
        g_s,
        inv,
        generalized_rld=True,
        g_s_inv=inv,
        g_r_inv=inv,
        d_invariant=True,
        ordering_case=OrderingCase.SLD_DOMINATES,
    )


def _mechanical_pure(lam_sq):
    g_s = (4 / lam_sq) * _I2
    # generalized RLD exactly as its defining overlap formula evaluates
    g_tilde = (4 / lam_sq) * (_I2 - _SIGMA)
    bound = (lam_sq / 4) * (_I2 + _SIGMA)
    return FisherBundle.assemble(
        g_s,
        g_tilde,
        bound,
        generalized_rld=True,
        g_s_inv=(lam_sq / 4) * _I2,
        g_r_inv=bound,
        d_invariant=True,
        ordering_case=OrderingCase.NO_ORDERING,
    )


def _canonical_thermal(lam_sq, params):
    na, nb = params.n_a, params.n_b
    g_s = (1 / lam_sq) * (1 / (1 + 2 * na) + 1 / (1 + 2 * nb)) * _I2
    denom = 1 + na + nb
    g_s_inv = lam_sq * (0.5 + na + nb + 2 * na * nb) / denom * _I2
    diag = 1 / (1 + na) + 1 / na + 1 / (1 + nb) + 1 / nb
    off = 1 / (na * (1 + na)) - 1 / (nb * (1 + nb))
    g_r = (1 / (4 * lam_sq)) * np.array([[diag, -1j * off], [1j * off, diag]])
    inv_diag = na + nb + 2 * na * nb
    inv_off = nb - na
    g_r_inv = (lam_sq / denom) * np.array(
        [[inv_diag, 1j * inv_off], [-1j * inv_off, inv_diag]]
    )
    z = (lam_sq / denom) * np.array(
        [[0.5 + inv_diag, 1j * inv_off], [-1j * inv_off, 0.5 + inv_diag]]
    )
    case = (
        OrderingCase.SLD_DOMINATES
        if abs(params.L0) <= 0.5 + 1e-12
        else OrderingCase.NO_ORDERING
    )
    return FisherBundle.assemble(
        g_s,
        g_r,
        z,
        generalized_rld=False,
        g_s_inv=g_s_inv,
        g_r_inv=g_r_inv,
        d_invariant=False,
        ordering_case=case,
    )


def _mechanical_thermal(lam_sq, params):
    na = params.n_a
    spread = 1 + 2 * na
    g_s = 4 / (lam_sq * spread) * _I2
    g_s_inv = (lam_sq / 4) * spread * _I2
    g_r = (1 / (lam_sq * na * (1 + na))) * (spread * _I2 - _SIGMA)
    g_r_inv = (lam_sq / 4) * (spread * _I2 + _SIGMA)
    return FisherBundle.assemble(
        g_s,
        g_r,
        g_r_inv,
        generalized_rld=False,
        g_s_inv=g_s_inv,
        g_r_inv=g_r_inv,
        d_invariant=True,
        ordering_case=OrderingCase.NO_ORDERING,
    )


def closed_fisher(
    key: ScenarioKey,
    constants: PhysicalConstants,
    params: ThermalParams | None = None,
) -> FisherBundle:
    """Analytic bundle for one of the four scenarios."""
    key = ScenarioKey(key.generators, key.state)
    lam_sq = constants.lam_sq
    if key.state is StateKind.PURE:
        if params is not None:
            raise ValueError("pure scenario takes no thermal parameters")
        if key.generators is Generators.CANONICAL:
            return _canonical_pure(lam_sq)
        return _mechanical_pure(lam_sq)
    _require_thermal(params)
    if key.generators is Generators.CANONICAL:
        return _canonical_thermal(lam_sq, params)
    return _mechanical_thermal(lam_sq, params)


def closed_sld_rld_operators(
    key: ScenarioKey,
    constants: PhysicalConstants,
    cutoff: FockCutoff,
    params: ThermalParams | None = None,
) -> dict[str, OperatorMatrix]:
    """Logarithmic derivatives at ``theta = 0`` built from ladder operators.

    Pure scenarios give ``L_S1, L_S2`` as commutators with the vacuum
    projector; thermal scenarios give ``L_S1, L_S2, L_R1, L_R2``.
    """
    key = ScenarioKey(key.generators, key.state)
    a, ad, b, bd = ladder_operators(cutoff)
    lam = constants.lam
    canonical = key.generators is Generators.CANONICAL

    if key.state is StateKind.PURE:
        rho0 = np.asarray(pure_lll_state(cutoff).rho)
        if canonical:
            L1 = (1 / lam) * commutator((ad - a) + (bd - b), rho0)
            L2 = (-1j / lam) * commutator((ad + a) - (bd + b), rho0)
        else:
            L1 = (2 / lam) * commutator(ad - a, rho0)
            L2 = (-2j / lam) * commutator(ad + a, rho0)
        return {
            "L_S1": OperatorMatrix(L1, cutoff, "L_S1"),
            "L_S2": OperatorMatrix(L2, cutoff, "L_S2"),
        }

    _require_thermal(params)
    na, nb = params.n_a, params.n_b
    ca = 1 / (lam * (1 + 2 * na))
    cb = 1 / (lam * (1 + 2 * nb))
    if canonical:
        ops = {
            "L_S1": ca * (a + ad) + cb * (b + bd),
            "L_S2": 1j * ca * (a - ad) - 1j * cb * (b - bd),
            "L_R1": (1 / (2 * lam)) * (a / (1 + na) + ad / na)
            + (1 / (2 * lam)) * (b / (1 + nb) + bd / nb),
            "L_R2": (-1j / (2 * lam)) * (-a / (1 + na) + ad / na)
            + (1j / (2 * lam)) * (-b / (1 + nb) + bd / nb),
        }
    else:
        ops = {
            "L_S1": 2 * ca * (a + ad),
            "L_S2": 2j * ca * (a - ad),
            "L_R1": (1 / lam) * (a / (1 + na) + ad / na),
            "L_R2": (1j / lam) * (a / (1 + na) - ad / na),
        }
    return {name: op.with_label(name) for name, op in ops.items()}


def sld_position_momentum_coefficients(
    key: ScenarioKey, constants: PhysicalConstants, params: ThermalParams
) -> dict[str, dict[str, float]]:
    """Thermal SLDs written as ``L_S1 = c p_y + d x`` and ``L_S2 = e p_x + f y``."""
    key = ScenarioKey(key.generators, key.state)
    _require_thermal(params)
    lam_sq = constants.lam_sq
    alpha = 1 / (1 + 2 * params.n_a)
    beta = 1 / (1 + 2 * params.n_b)
    if key.generators is Generators.MECHANICAL:
        # mode a only: a + a_dag = lam p_y + x/lam, i(a - a_dag) = y/lam - lam p_x
        c = 2 * alpha
        return {
            "L_S1": {"p_y": c, "x": c / lam_sq},
            "L_S2": {"p_x": -c, "y": c / lam_sq},
        }
    return {
        "L_S1": {"p_y": alpha - beta, "x": (alpha + beta) / lam_sq},
        "L_S2": {"p_x": -(alpha - beta), "y": (alpha + beta) / lam_sq},
    }


def sld_from_position_momentum(
    key: ScenarioKey,
    constants: PhysicalConstants,
    cutoff: FockCutoff,
    params: ThermalParams,
) -> dict[str, OperatorMatrix]:
    coeffs = sld_position_momentum_coefficients(key, constants, params)
    p_x, p_y, x, y = canonical_operators(cutoff, constants)
    ops = {"p_x": p_x, "p_y": p_y, "x": x, "y": y}
    out = {}
    for name, terms in coeffs.items():
        total = sum(c * ops[sym] for sym, c in terms.items())
        out[name] = total.with_label(name)
    return out
