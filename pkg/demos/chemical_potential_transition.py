"""
Where the RLD bound starts to matter
====================================

Fixing <L> through the chemical potential moves the thermal state between
a regime where the SLD bound alone is tight and one where the RLD bound
cuts into the SLD quadrant.  The switch sits at |<L>| = 1/2 at every
temperature.
"""

from qcrb.bounds import l0_grid, transition_scan
from qcrb.fock import PhysicalConstants
from qcrb.states import solve_chemical_potential, zero_temperature_mu_limit

constants = PhysicalConstants(1.0)

# mu grows monotonically with the target angular momentum
for bw in (0.1, 1.0, 5.0):
    mus = [solve_chemical_potential(L0, bw) for L0 in (-2.0, -1.0, 0.0, 1.0, 2.0)]
    print(f"beta*omega = {bw:<4}", " ".join(f"{m:8.4f}" for m in mus))

# low temperature: mu approaches a finite limit only for negative <L>
for L0 in (-2.0, -1.0, -0.5):
    print(f"L0 = {L0:5}: mu(beta*omega=40) = {solve_chemical_potential(L0, 40.0):.6f}, "
          f"limit {zero_temperature_mu_limit(L0):.6f}")

# Delta V changes sign exactly at |L0| = 1/2 (units of lam^2)
print("\n  L0     Delta g   Delta V   ordering")
for row in transition_scan(1.0, l0_grid(-1, 1, 0.25), constants):
    print(f"{row.L0:5.2f}  {row.delta_g:8.4f}  {row.delta_v_rs:8.4f}   {row.ordering_case}")
