"""
Fisher matrices of a displaced thermal electron
===============================================

Builds the thermal reference state at kappa_a^2 = 1, kappa_b^2 = 1/2, solves
for the SLD and RLD numerically in a truncated Fock space and compares the
result with the analytic bundle.  Units: eB = 1, so lam^2 = 2.
"""

import numpy as np

from qcrb.closed_forms import ScenarioKey, closed_fisher, delta_g
from qcrb.fock import PhysicalConstants
from qcrb.qfi import GeneratorPair, fisher_matrices
from qcrb.states import thermal_params_from, thermal_state

np.set_printoptions(precision=6, suppress=True)
constants = PhysicalConstants(1.0)

# target <L> = 1 at beta*omega = ln 3 fixes the chemical potential
params = thermal_params_from(1.0, np.log(3))
print(f"mu = {params.mu:.10f}  kappa_a^2 = {params.kappa_a_sq:.6f}  kappa_b^2 = {params.kappa_b_sq:.6f}")

# the cutoff is sized so the discarded tail stays below 1e-8
state = thermal_state(params)
print("cutoff:", state.cutoff, " discarded weight:", f"{state.truncation_weight:.1e}")

# shifts generated by the canonical momenta (model 1) and the mechanical ones (model 2)
for which in ("canonical", "mechanical"):
    gens = getattr(GeneratorPair, which)(state.cutoff, constants)
    numeric = fisher_matrices(state, gens)
    exact = closed_fisher(ScenarioKey(which, "thermal"), constants, params)
    print(f"\n{which} momenta")
    print("  G_S^-1 =\n", numeric.g_s_inv)
    print("  G_R^-1 =\n", numeric.g_r_inv)
    err = max(
        np.max(np.abs(numeric.matrices()[k] - M)) / np.max(np.abs(M))
        for k, M in exact.matrices().items()
    )
    print(f"  worst relative deviation from the closed form: {err:.1e}")
    print(f"  D-invariant: {numeric.d_invariant}   ordering: {numeric.ordering_case}")

# Z minus the RLD inverse is a multiple of the identity for model 1
numeric = fisher_matrices(state, GeneratorPair.canonical(state.cutoff, constants))
print("\nZ - G_R^-1 =\n", numeric.z - numeric.g_r_inv)
print("Delta g =", delta_g(constants, params))
