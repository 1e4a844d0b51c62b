"""Reference states: the lowest Landau level and the two-mode thermal state.

The thermal state ``exp(-beta H + mu L)/Z`` factorizes into two single-mode
thermal states with mean occupations ``2 kappa_a^2`` and ``2 kappa_b^2``.
The chemical potential ``mu`` is fixed by the requested mean angular
momentum ``L0 = 2 kappa_a^2 - 2 kappa_b^2``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .fock import FockCutoff, OperatorMatrix

__all__ = [
    "NonPhysicalBranch",
    "CutoffTooSmall",
    "ThermalParams",
    "ReferenceState",
    "solve_chemical_potential",
    "chemical_potential_quadratic",
    "thermal_params_from",
    "thermal_params_from_mu",
    "thermal_params_from_kappas",
    "zero_temperature_mu_limit",
    "auto_cutoff",
    "build_reference_state",
    "pure_lll_state",
    "thermal_state",
    "gaussian_state_matrix_element_check",
]

# |L0 + 1| below this uses the dedicated L0 = -1 formula
_L0_MINUS_ONE_WINDOW = 1e-9
DEFAULT_TAIL = 1e-9
DEFAULT_MAX_TRUNCATION = 1e-8
MIN_LEVELS = 16


class NonPhysicalBranch(ArithmeticError):
    """The root picked for the chemical potential left ``0 < mu < beta_omega``."""


class CutoffTooSmall(ValueError):
    def __init__(self, truncation_weight: float, cutoff: FockCutoff, limit: float):
        self.truncation_weight = truncation_weight
        self.cutoff = cutoff
        self.limit = limit
        super().__init__(
            f"discarded thermal weight {truncation_weight:.3e} exceeds {limit:.1e} "
            f"at cutoff ({cutoff.n_a}, {cutoff.n_b}); raise the cutoff"
        )


def _check_beta_omega(beta_omega: float) -> None:
    if not (beta_omega > 0 and math.isfinite(beta_omega)):
        raise ValueError(f"beta_omega must be positive and finite, got {beta_omega!r}")


def chemical_potential_quadratic(mu: float, L0: float, beta_omega: float) -> float:
    """Left side of ``(L0+1) e^{2mu} - L0 (e^{bw}+1) e^{mu} + (L0-1) e^{bw} = 0``.

    Scaled by ``e^{-2 bw}`` so that it stays finite for large ``beta_omega``.
    """
    u = math.exp(mu - beta_omega)
    q = math.exp(-beta_omega)
    return (L0 + 1) * u * u - L0 * (1 + q) * u + (L0 - 1) * q


def solve_chemical_potential(L0: float, beta_omega: float) -> float:
    """Chemical potential that fixes ``<L> = L0`` at inverse temperature ``beta_omega``.

    Takes the positive-discriminant root of the quadratic in ``e^mu``.  The
    expression is evaluated in two algebraically equivalent forms, each free
    of cancellation on its own half-line of ``L0``; neither overflows for
    large ``beta_omega``.
    """
    _check_beta_omega(beta_omega)
    L0 = float(L0)
    q = math.exp(-beta_omega)
    if abs(L0 + 1) < _L0_MINUS_ONE_WINDOW:
        # e^mu = 2 e^bw / (e^bw + 1)
        mu = math.log(2.0) - math.log1p(q)
    else:
        root = math.sqrt(L0 * L0 * (1 - q) ** 2 + 4 * q)
        if L0 >= 0:
            # e^{mu - bw} = [L0 (1+q) + root] / (2 (L0+1))
            mu = beta_omega + math.log((L0 * (1 + q) + root) / (2 * (L0 + 1)))
        else:
            # rationalized: e^mu = 2 (1 - L0) / (root - L0 (1+q))
            mu = math.log(2 * (1 - L0) / (root - L0 * (1 + q)))
    if not (0 < mu < beta_omega):
        raise NonPhysicalBranch(
            f"mu={mu!r} outside (0, {beta_omega!r}) for L0={L0!r}"
        )
    return mu


def zero_temperature_mu_limit(L0: float) -> float:
    """Limit of the chemical potential as ``beta -> infinity``."""
    if L0 >= 0:
        return math.inf
    return math.log((L0 - 1) / L0)


@dataclass(frozen=True)
class ThermalParams:
    beta_omega: float
    mu: float
    L0: float
    kappa_a_sq: float
    kappa_b_sq: float

    @property
    def n_a(self) -> float:
        """Mean occupation of mode a, ``2 kappa_a^2``."""
        return 2 * self.kappa_a_sq

    @property
    def n_b(self) -> float:
        return 2 * self.kappa_b_sq

    @property
    def gamma_a(self) -> float:
        return self.n_a / (1 + self.n_a)

    @property
    def gamma_b(self) -> float:
        return self.n_b / (1 + self.n_b)


def _half_occupation(x: float) -> float:
    """``kappa^2 = 1 / (2 (e^x - 1))``."""
    return 0.5 / math.expm1(x)


def thermal_params_from_mu(mu: float, beta_omega: float) -> ThermalParams:
    _check_beta_omega(beta_omega)
    if not (0 < mu < beta_omega):
        raise NonPhysicalBranch(f"mu={mu!r} outside (0, {beta_omega!r})")
    ka = _half_occupation(beta_omega - mu)
    kb = _half_occupation(mu)
    return ThermalParams(beta_omega, mu, 2 * ka - 2 * kb, ka, kb)


def thermal_params_from(L0: float, beta_omega: float) -> ThermalParams:
    mu = solve_chemical_potential(L0, beta_omega)
    ka = _half_occupation(beta_omega - mu)
    kb = _half_occupation(mu)
    return ThermalParams(beta_omega, mu, float(L0), ka, kb)


def thermal_params_from_kappas(kappa_a_sq: float, kappa_b_sq: float) -> ThermalParams:
    """Invert ``2 kappa_a^2 = 1/(e^{bw - mu} - 1)`` and ``2 kappa_b^2 = 1/(e^mu - 1)``."""
    if not (kappa_a_sq > 0 and kappa_b_sq > 0):
        raise ValueError("thermal kappas must be strictly positive")
    mu = math.log1p(0.5 / kappa_b_sq)
    beta_omega = mu + math.log1p(0.5 / kappa_a_sq)
    return ThermalParams(
        beta_omega, mu, 2 * kappa_a_sq - 2 * kappa_b_sq, kappa_a_sq, kappa_b_sq
    )


def _env_cutoff():
    raw = os.environ.get("QCRB_DEFAULT_CUTOFF")
    if not raw:
        return None
    parts = [int(p) for p in raw.replace("x", ",").split(",") if p.strip()]
    if len(parts) == 1:
        parts = parts * 2
    return FockCutoff(*parts)


def _levels_for(gamma: float, tail: float) -> int:
    if gamma <= 0:
        return MIN_LEVELS
    return max(MIN_LEVELS, math.ceil(math.log(tail) / math.log(gamma)))


def auto_cutoff(params: ThermalParams | None = None, tail: float = DEFAULT_TAIL) -> FockCutoff:
    """Smallest cutoff with ``gamma_m^{n_m} <= tail`` in each mode (at least 16 levels).

    ``QCRB_DEFAULT_CUTOFF`` (``"n"`` or ``"n_a,n_b"``) overrides the sizing.
    """
    env = _env_cutoff()
    if env is not None:
        return env
    if params is None:
        return FockCutoff(MIN_LEVELS, MIN_LEVELS)
    return FockCutoff(_levels_for(params.gamma_a, tail), _levels_for(params.gamma_b, tail))


@dataclass(frozen=True, eq=False)
class ReferenceState:
    """Density matrix on the truncated space.

    ``populations`` holds the (diagonal) eigenvalues in the Fock basis; both
    reference states are diagonal there.  ``truncation_weight`` is the
    probability lost to truncation before renormalization.
    """

    kind: str
    rho: OperatorMatrix
    populations: np.ndarray
    truncation_weight: float
    params: ThermalParams | None = None

    @property
    def cutoff(self) -> FockCutoff:
        return self.rho.cutoff

    @property
    def is_pure(self) -> bool:
        return self.kind == "pure"

    def spectrum(self):
        """``(eigenvalues, eigenvectors)`` with the Fock basis as eigenbasis."""
        return self.populations, np.eye(self.cutoff.dim)


def pure_lll_state(cutoff: FockCutoff | None = None) -> ReferenceState:
    """Projector onto ``|0,0>``: lowest Landau level with zero angular momentum."""
    cutoff = cutoff or auto_cutoff()
    pops = np.zeros(cutoff.dim)
    pops[0] = 1.0
    rho = OperatorMatrix(np.diag(pops), cutoff, "rho_LLL")
    return ReferenceState("pure", rho, pops, 0.0)


def _geometric(gamma: float, n: int) -> np.ndarray:
    return (1 - gamma) * gamma ** np.arange(n)


def thermal_state(
    params: ThermalParams,
    cutoff: FockCutoff | None = None,
    max_truncation: float = DEFAULT_MAX_TRUNCATION,
) -> ReferenceState:
    """``rho_a (x) rho_b`` with geometric populations ``(1-g) g^n`` per mode."""
    cutoff = cutoff or auto_cutoff(params)
    pa = _geometric(params.gamma_a, cutoff.n_a)
    pb = _geometric(params.gamma_b, cutoff.n_b)
    pops = np.kron(pa, pb)
    weight = float(1.0 - pops.sum())
    if weight >= max_truncation:
        raise CutoffTooSmall(weight, cutoff, max_truncation)
    pops = pops / pops.sum()
    rho = OperatorMatrix(np.diag(pops), cutoff, "rho_thermal")
    return ReferenceState("thermal", rho, pops, max(weight, 0.0), params)


def build_reference_state(
    kind,
    cutoff: FockCutoff | None = None,
    max_truncation: float = DEFAULT_MAX_TRUNCATION,
) -> ReferenceState:
    """Dispatch on ``"pure"`` or a :class:`ThermalParams` instance."""
    if isinstance(kind, ThermalParams):
        return thermal_state(kind, cutoff, max_truncation)
    if kind in ("pure", "PureLLL"):
        return pure_lll_state(cutoff)
    raise ValueError(f"unknown reference state {kind!r}")


def gaussian_state_matrix_element_check(kappa_sq: float, z1: complex, z2: complex):
    """Coherent-state matrix elements of the thermal state, two ways.

    ``lhs`` uses the geometric (number-basis) form with ``gamma`` from
    ``2 kappa^2 = gamma/(1-gamma)``; ``rhs`` uses the Gaussian mixture of
    coherent states with variance ``kappa^2``.
    """
    if not kappa_sq > 0:
        raise ValueError("kappa_sq must be positive")
    gamma = 2 * kappa_sq / (1 + 2 * kappa_sq)
    base = -0.5 * abs(z1) ** 2 - 0.5 * abs(z2) ** 2
    overlap = np.conj(z1) * z2
    lhs = (1 - gamma) * np.exp(base + gamma * overlap)
    rhs = np.exp(base + overlap / (1 / (2 * kappa_sq) + 1)) / (2 * kappa_sq + 1)
    return complex(lhs), complex(rhs)
