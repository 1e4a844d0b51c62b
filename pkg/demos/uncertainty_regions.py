"""
Allowed mean-square errors for the two shift models
===================================================

Turns inverse Fisher matrices into the region of (V11, V22) pairs that an
unbiased estimator can reach, and writes one SVG per reference state.

Run as ``python demos/uncertainty_regions.py [output-dir]``.
"""

import sys
from pathlib import Path

from qcrb.bounds import point_allowed, region_from_bundle
from qcrb.closed_forms import ScenarioKey, closed_fisher
from qcrb.figures import write_figure
from qcrb.fock import PhysicalConstants
from qcrb.states import thermal_params_from_kappas

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-output")
constants = PhysicalConstants(1.0)
params = thermal_params_from_kappas(1.0, 0.5)

# model 1 at finite temperature: SLD lines plus an RLD hyperbola
region = region_from_bundle(closed_fisher(ScenarioKey("canonical", "thermal"), constants, params))
print("SLD corner:", (region.sld.g11, region.sld.g22))
print("RLD hyperbola offset", region.rld.g11, "with |Im g12| =", region.rld.im_g12)
print("the curves meet at", region.intersections, " Delta V =", region.delta_v_rs)

# the corner of the SLD quadrant is excluded once the hyperbola bites
for point in [(3.75, 3.75), (3.8, 3.8), (4.5, 3.75), (5.0, 5.0)]:
    print(f"  {point} allowed: {point_allowed(region, *point)}")

# coherent state, mechanical momenta: the RLD bound is the only trade-off
coherent = region_from_bundle(closed_fisher(ScenarioKey("mechanical", "pure"), constants))
print("\ncoherent model: SLD at", coherent.sld.g11, "hyperbola offset", coherent.rld.g11)
print("  (0.5, 0.5) allowed:", point_allowed(coherent, 0.5, 0.5))
print("  (1.0, 1.0) allowed:", point_allowed(coherent, 1.0, 1.0))

# the same regions as figures in units of lam^2
for number in (2, 4):
    for path in write_figure(number, outdir, constants):
        print("wrote", path)
