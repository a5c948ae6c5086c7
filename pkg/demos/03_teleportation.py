"""
Teleporting through the damaged channel
=======================================

Simulate the standard teleportation scheme outcome by outcome. After Alice's
Bell measurement Bob is left entangled with the environment, and that residual
entanglement caps the fidelity he can reach.
"""

import numpy as np

from envchannel import channel, measures, teleport
from envchannel.sampling import SeedSpec, haar_unitary

u = haar_unitary(4, SeedSpec(master_seed=3, stream_index=0))
psi = channel.evolve(u)
s = measures.summarize(psi)
rho_ab = measures.reduced_pairs(psi)["AB"]
print(f"C_AB={s.C_AB:.4f}  C_EB={s.C_EB:.4f}  F_AB={s.F_AB:.4f}")

# %%
# Outcomes for an input on the +z axis
for o in teleport.sts_run(psi, [0, 0, 1], teleport.optimal_correction(rho_ab)):
    print(f"alpha={o.alpha} P={o.probability:.4f} C_EB^alpha={o.c_eb_alpha:.4f} q={o.q_alpha:.4f}")

# %%
# Averaged fidelity: simulation, the singlet-fraction formula, and the split
# into a classical part plus a part carried by C_AB.
rep = teleport.fidelity_report(psi, s.C_AB, s.C_EB, rho_ab)
print("simulated       :", rep.f_simulated)
print("(2F + 1)/3      :", (2 * s.F_AB + 1) / 3)
print("f_cc + f_qc/3 C :", rep.f_cc_max + rep.f_qc_max / 3 * s.C_AB)
print("plain Pauli corrections only:", teleport.average_fidelity(psi))
