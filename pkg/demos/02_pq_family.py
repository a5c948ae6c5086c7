"""
A two-parameter interaction and amplitude damping
=================================================

``pq_unitary(p, 0)`` is ordinary amplitude damping of Alice's qubit. For the
whole family the concurrences and the singlet fraction have closed forms.
"""

import numpy as np

from envchannel import channel, measures

# Kraus operators of amplitude damping read off the unitary
m0, m1 = channel.kraus_from_unitary(channel.pq_unitary(0.36, 0.0), "Lambda")
print("M0 =\n", m0.real)
print("M1 =\n", m1.real)

# The Kraus operators of the environment's map are the same numbers reindexed.
n0, n1 = channel.kraus_from_unitary(channel.pq_unitary(0.36, 0.0), "Gamma")
print("N0 =\n", n0.real)

# %%
# Simulated versus closed-form values along q = 0.2
print(f"{'p':>5} {'C_AB':>9} {'closed':>9} {'F_AB':>9} {'closed':>9} {'C_EB':>9} {'closed':>9}")
for p in np.linspace(0, 1, 6):
    s = measures.summarize(channel.evolve(channel.pq_unitary(p, 0.2)))
    c_ab, f_ab, c_eb = channel.pq_closed_forms(p, 0.2)
    print(f"{p:5.2f} {s.C_AB:9.6f} {c_ab:9.6f} {s.F_AB:9.6f} {f_ab:9.6f} {s.C_EB:9.6f} {c_eb:9.6f}")

# %%
# Above the anti-diagonal p + q = 1 the best maximally entangled state is
# |psi+> rather than |phi+>.
p, q = 0.9, 0.8
print("overlap with phi+:", channel.phi_plus_overlap_pq(p, q))
print("singlet fraction :", channel.pq_closed_forms(p, q)[1])
