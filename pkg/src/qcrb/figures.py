"""Data and SVG renderings for the four standard figures.

1. chemical potential against ``L0`` at ``beta omega`` in {0.1, 1, 5};
2. thermal uncertainty regions for ``kappa_a^2 = 1, kappa_b^2 = 1/2``;
3. ``Delta V^{R-S}`` against ``L0`` at the same temperatures as figure 1;
4. pure-state uncertainty regions.

Region coordinates are in units of ``lam^2`` unless raw units are requested.
Every CSV starts with a single ``# qcrb <version>`` line so that equal
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bounds import (
    CurveKind,
    UncertaintyRegion,
    boundary_samples,
    l0_grid,
    region_from_bundle,
    transition_scan,
)
from .closed_forms import ScenarioKey, closed_fisher
from .fock import PhysicalConstants
from .states import solve_chemical_potential, thermal_params_from_kappas
from .svg import Marker, Series, line_plot

__all__ = [
    "FIGURE_BETA_OMEGAS",
    "FigureOutput",
    "csv_text",
    "region_curves",
    "chempot_rows",
    "figure_regions",
    "region_rows",
    "build_figure",
    "write_figure",
]

FIGURE_BETA_OMEGAS = (0.1, 1.0, 5.0)
L0_RANGE = (-4.0, 4.0, 0.05)
SAMPLES = 101
_STYLES = ("solid", "dashed", "dotted")


def _num(v: float) -> str:
    return f"{v:.12g}"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# qcrb {__version__}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


@dataclass(frozen=True)
class FigureOutput:
    number: int
    csv: str
    svg: str


def chempot_rows(beta_omegas=FIGURE_BETA_OMEGAS, L0_values=None):
    """``(beta_omega, L0, mu)`` on the product grid, temperature-major."""
    if L0_values is None:
        L0_values = l0_grid(*L0_RANGE)
    return [
        (bw, float(L0), solve_chemical_potential(float(L0), bw))
        for bw in beta_omegas
        for L0 in L0_values
    ]


def figure_regions(number: int, constants: PhysicalConstants, raw_units: bool = False):
    """Named regions plotted in figure 2 or 4."""
    if number == 2:
        params = thermal_params_from_kappas(1.0, 0.5)
        keys = {
            "model1": ScenarioKey("canonical", "thermal"),
            "model2": ScenarioKey("mechanical", "thermal"),
        }
    elif number == 4:
        params = None
        keys = {
            "model1": ScenarioKey("canonical", "pure"),
            "model2": ScenarioKey("mechanical", "pure"),
        }
    else:
        raise ValueError(f"figure {number} has no uncertainty regions")
    factor = 1.0 if raw_units else 1 / constants.lam_sq
    return {
        name: region_from_bundle(closed_fisher(key, constants, params)).scaled(factor)
        for name, key in keys.items()
    }


def _window(number: int, constants: PhysicalConstants, raw_units: bool) -> float:
    v_max = 3.0 if number == 2 else 1.5
    return v_max * (constants.lam_sq if raw_units else 1.0)


def region_curves(name: str, region: UncertaintyRegion, v_max: float, n: int):
    """``(curve, kind, points)`` triples, skipping RLD lines that coincide with SLD lines."""
    samples = boundary_samples(region, v_max, n)
    same_lines = (
        region.rld is not None
        and region.rld.kind is CurveKind.SLD_LINES
        and (region.rld.g11, region.rld.g22) == (region.sld.g11, region.sld.g22)
    )
    out = []
    for curve, pts in samples.items():
        if curve.startswith("sld"):
            kind = CurveKind.SLD_LINES.value
        elif curve == "rld":
            kind = CurveKind.RLD_HYPERBOLA.value
        elif same_lines:
            continue
        else:
            kind = "RLDLines"
        out.append((f"{name}_{curve}", kind, pts))
    if region.intersections:
        out.append((f"{name}_intersection", "Intersection", list(region.intersections)))
    return out


def region_rows(regions: dict, v_max: float, n: int = SAMPLES):
    rows = []
    for name, region in regions.items():
        for curve, kind, pts in region_curves(name, region, v_max, n):
            rows.extend((curve, kind, _num(a), _num(b)) for a, b in pts)
    return rows


def _l_shape(samples):
    return list(reversed(samples["sld_vertical"])) + samples["sld_horizontal"][1:]


def _fig1():
    rows = chempot_rows()
    series = []
    for bw, style in zip(FIGURE_BETA_OMEGAS, _STYLES):
        pts = [(L0, mu) for b, L0, mu in rows if b == bw]
        series.append(Series(f"beta omega = {bw:g}", pts, style))
    svg = line_plot(series, title="Chemical potential", xlabel="<L>0", ylabel="mu")
    text = csv_text(["beta_omega", "L0", "mu"], [[_num(v) for v in r] for r in rows])
    return text, svg


def _fig3(constants, raw_units):
    grid = l0_grid(*L0_RANGE)
    rows, series = [], []
    for bw, style in zip(FIGURE_BETA_OMEGAS, _STYLES):
        scan = transition_scan(bw, grid, constants, lam_units=not raw_units)
        rows.extend(
            [_num(r.beta_omega), _num(r.L0), _num(r.mu), _num(r.delta_g),
             _num(r.delta_v_rs), r.ordering_case.value]
            for r in scan
        )
        series.append(Series(f"beta omega = {bw:g}", [(r.L0, r.delta_v_rs) for r in scan], style))
    header = ["beta_omega", "L0", "mu", "delta_g", "delta_v_rs", "ordering_case"]
    unit = "" if raw_units else " / lam^2"
    svg = line_plot(
        series, title="RLD-SLD intersection offset", xlabel="<L>0", ylabel=f"Delta V (R-S){unit}"
    )
    return csv_text(header, rows), svg


def _region_figure(number, constants, raw_units):
    regions = figure_regions(number, constants, raw_units)
    v_max = _window(number, constants, raw_units)
    text = csv_text(["curve", "kind", "v11", "v22"], region_rows(regions, v_max))

    series, markers = [], []
    colors = {"model1": "#1f4e9c", "model2": "#222222"}
    sld_style = {"model1": "dotted", "model2": "dotted" if number == 2 else "dashed"}
    for name, region in regions.items():
        samples = boundary_samples(region, v_max, SAMPLES)
        label = "Model 1" if name == "model1" else "Model 2"
        series.append(Series(f"{label} SLD", _l_shape(samples), sld_style[name], colors[name]))
        if "rld" in samples:
            kind = "generalized RLD" if number == 4 else "RLD"
            series.append(Series(f"{label} {kind}", samples["rld"], "solid", colors[name]))
        for pt in region.intersections[:1]:
            markers.append(Marker("intersection", pt, "circle", colors[name]))
    unit = "" if raw_units else " / lam^2"
    title = "Thermal uncertainty regions" if number == 2 else "Pure-state uncertainty regions"
    lim = (0.0, v_max)
    svg = line_plot(
        series, title=title, xlabel=f"V11{unit}", ylabel=f"V22{unit}",
        markers=markers, xlim=lim, ylim=lim,
    )
    return text, svg


def build_figure(
    number: int, constants: PhysicalConstants | None = None, raw_units: bool = False
) -> FigureOutput:
    constants = constants or PhysicalConstants()
    if number == 1:
        text, svg = _fig1()
    elif number == 3:
        text, svg = _fig3(constants, raw_units)
    elif number in (2, 4):
        text, svg = _region_figure(number, constants, raw_units)
    else:
        raise ValueError(f"unknown figure {number}; choose 1-4")
    return FigureOutput(number, text, svg)


def write_figure(
    number: int,
    outdir,
    constants: PhysicalConstants | None = None,
    raw_units: bool = False,
    svg: bool = True,
) -> list[Path]:
    fig = build_figure(number, constants, raw_units)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [outdir / f"figure-{number}.csv"]
    paths[0].write_text(fig.csv)
    if svg:
        paths.append(outdir / f"figure-{number}.svg")
        paths[1].write_text(fig.svg)
    return paths
