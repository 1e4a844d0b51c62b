"""Uncertainty regions over the MSE diagonal ``(V11, V22)``.

The SLD bound gives the quadrant ``V11 >= g_S^11, V22 >= g_S^22``.  The RLD
bound gives the region above the hyperbola
``(V11 - g_R^11)(V22 - g_R^22) = |Im g_R^12|^2``, with ``g`` denoting entries
of the inverse Fisher matrices.  The allowed set is the intersection, and
boundary points count as allowed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .closed_forms import ScenarioKey, closed_fisher, delta_g, delta_v_rs
from .fock import PhysicalConstants
from .qfi import FisherBundle, OrderingCase
from .states import thermal_params_from

__all__ = [
    "CurveKind",
    "BoundCurve",
    "UncertaintyRegion",
    "InvalidRange",
    "region_from_bundle",
    "point_allowed",
    "boundary_samples",
    "TransitionRow",
    "transition_scan",
    "l0_grid",
]

# relative size below which Im g^12 or g_S - g_R is treated as zero
_DEGENERATE = 1e-12


class InvalidRange(ValueError):
    pass


class CurveKind(str, enum.Enum):
    SLD_LINES = "SLDLines"
    RLD_HYPERBOLA = "RLDHyperbola"


@dataclass(frozen=True)
class BoundCurve:
    g11: float
    g22: float
    im_g12: float = 0.0
    kind: CurveKind = CurveKind.SLD_LINES

    def scaled(self, factor: float) -> "BoundCurve":
        return replace(
            self, g11=self.g11 * factor, g22=self.g22 * factor, im_g12=self.im_g12 * factor
        )

    def satisfied(self, v11: float, v22: float) -> bool:
        d1, d2 = v11 - self.g11, v22 - self.g22
        if d1 < 0 or d2 < 0:
            return False
        if self.kind is CurveKind.SLD_LINES:
            return True
        return d1 * d2 >= self.im_g12**2


@dataclass(frozen=True)
class UncertaintyRegion:
    sld: BoundCurve
    rld: BoundCurve | None = None
    intersections: list = field(default_factory=list)
    delta_v_rs: float | None = None

    def scaled(self, factor: float) -> "UncertaintyRegion":
        """Multiply every coordinate by ``factor`` (``1/lam^2`` gives lambda^2 units)."""
        return UncertaintyRegion(
            self.sld.scaled(factor),
            None if self.rld is None else self.rld.scaled(factor),
            [(a * factor, b * factor) for a, b in self.intersections],
            None if self.delta_v_rs is None else self.delta_v_rs * factor,
        )


def _rld_curve(g_r_inv: np.ndarray) -> BoundCurve:
    g11, g22 = float(np.real(g_r_inv[0, 0])), float(np.real(g_r_inv[1, 1]))
    im = abs(float(np.imag(g_r_inv[0, 1])))
    if im <= _DEGENERATE * max(abs(g11), abs(g22), 1e-300):
        return BoundCurve(g11, g22, 0.0, CurveKind.SLD_LINES)
    return BoundCurve(g11, g22, im, CurveKind.RLD_HYPERBOLA)


def region_from_bundle(bundle: FisherBundle) -> UncertaintyRegion:
    """Region in the raw units of ``bundle``."""
    s = np.asarray(bundle.g_s_inv)
    sld = BoundCurve(float(s[0, 0]), float(s[1, 1]))
    rld = _rld_curve(np.asarray(bundle.g_r_inv))

    gap1, gap2 = sld.g11 - rld.g11, sld.g22 - rld.g22
    scale = max(abs(sld.g11), abs(sld.g22))
    if min(gap1, gap2) <= _DEGENERATE * scale:
        # asymptotes coincide with (or lie above) the SLD lines
        return UncertaintyRegion(sld, rld, [], None)

    im_sq = rld.im_g12**2
    v11_cross = rld.g11 + im_sq / gap2
    v22_cross = rld.g22 + im_sq / gap1
    dv = v11_cross - sld.g11
    points = []
    if dv > 0:
        points = [(v11_cross, sld.g22), (sld.g11, v22_cross)]
    return UncertaintyRegion(sld, rld, points, dv)


def point_allowed(region: UncertaintyRegion, v11: float, v22: float) -> bool:
    if not region.sld.satisfied(v11, v22):
        return False
    return region.rld is None or region.rld.satisfied(v11, v22)


def _sld_half_lines(sld: BoundCurve, v_max: float, n: int):
    """Vertical then horizontal half-line, each from the corner out to ``v_max``."""
    up = np.linspace(sld.g22, v_max, n)
    right = np.linspace(sld.g11, v_max, n)
    vertical = [(sld.g11, float(v)) for v in up]
    horizontal = [(float(v), sld.g22) for v in right]
    return vertical, horizontal


def _rld_branch(region: UncertaintyRegion, v_max: float, n: int):
    """Hyperbola ``V11 = g11 + h e^s, V22 = g22 + h e^-s`` over the allowed window."""
    rld, sld = region.rld, region.sld
    h = rld.im_g12
    if v_max <= rld.g11 or v_max <= rld.g22:
        return []
    s_hi = math.log((v_max - rld.g11) / h)
    s_lo = -math.log((v_max - rld.g22) / h)
    if sld.g22 > rld.g22:
        s_hi = min(s_hi, math.log(h / (sld.g22 - rld.g22)))
    if sld.g11 > rld.g11:
        s_lo = max(s_lo, math.log((sld.g11 - rld.g11) / h))
    if s_lo > s_hi:
        return []
    s = np.linspace(s_lo, s_hi, n)
    return [(float(rld.g11 + h * np.exp(t)), float(rld.g22 + h * np.exp(-t))) for t in s]


def boundary_samples(region: UncertaintyRegion, v11_max: float, n: int) -> dict:
    """Sample every boundary curve inside the square window ``[.., v11_max]^2``.

    Returns ``{"sld_vertical": [...], "sld_horizontal": [...], "rld": [...]}``
    with ``n`` points each.  The RLD branch is sampled evenly in the
    hyperbola's log parameter, which places the symmetric point in the middle
    for odd ``n`` and hits the SLD intersections at its ends.  A degenerate
    RLD bound is sampled as its own pair of half-lines.
    """
    if n < 2:
        raise InvalidRange(f"need at least 2 samples per curve, got {n}")
    if not v11_max > region.sld.g11:
        raise InvalidRange(f"v11_max={v11_max} must exceed g11={region.sld.g11}")
    vertical, horizontal = _sld_half_lines(region.sld, v11_max, n)
    out = {"sld_vertical": vertical, "sld_horizontal": horizontal}
    rld = region.rld
    if rld is None:
        return out
    if rld.kind is CurveKind.RLD_HYPERBOLA:
        out["rld"] = _rld_branch(region, v11_max, n)
    else:
        v, hz = _sld_half_lines(rld, v11_max, n)
        out["rld_vertical"], out["rld_horizontal"] = v, hz
    return out


class TransitionRow(NamedTuple):
    beta_omega: float
    L0: float
    mu: float
    delta_g: float
    delta_v_rs: float
    ordering_case: OrderingCase


def l0_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid built from integer multiples of ``step``, so 0.5 lands exactly."""
    if not step > 0 or stop < start:
        raise InvalidRange(f"bad grid [{start}, {stop}] step {step}")
    k0 = int(round(start / step))
    k1 = int(round(stop / step))
    ks = np.arange(k0, k1 + 1)
    # k * step can miss a tidy decimal by an ulp; round to the step's precision
    digits = max(0, -int(math.floor(math.log10(step))) + 2)
    return np.round(ks * step, digits)


def transition_scan(
    beta_omega: float,
    L0_grid,
    constants: PhysicalConstants,
    lam_units: bool = True,
) -> list[TransitionRow]:
    """``Delta g``, ``Delta V^{R-S}`` and the ordering case along a line of ``L0``.

    Values are in units of ``lam^2`` unless ``lam_units`` is false.
    """
    key = ScenarioKey("canonical", "thermal")
    factor = 1 / constants.lam_sq if lam_units else 1.0
    rows = []
    for L0 in L0_grid:
        params = thermal_params_from(float(L0), beta_omega)
        case = closed_fisher(key, constants, params).ordering_case
        rows.append(
            TransitionRow(
                beta_omega,
                float(L0),
                params.mu,
                delta_g(constants, params) * factor,
                delta_v_rs(constants, params) * factor,
                case,
            )
        )
    return rows
