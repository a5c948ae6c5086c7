"""
Singlet fraction against distributed entanglement
=================================================

Draw random interactions between Alice's qubit and a qubit environment, then
compare the singlet fraction of the damaged channel with its concurrence.
Alone, the concurrence does not fix ``F_AB``; adding Bob's entanglement with
the environment does.
"""

import numpy as np

from envchannel import harness
from envchannel.harness import ExperimentConfig

recs, summary = harness.run_cue(ExperimentConfig("cue", sample_count=2000, master_seed=1))
c_ab = np.array([r.C_AB for r in recs])
c_eb = np.array([r.C_EB for r in recs])
f_ab = np.array([r.F_AB for r in recs])

# Points fill the region under the pure-state line F = (1 + C)/2.
print("furthest below the pure-state line:", summary["max_below_pure_line"])

# The combination (1 + C_AB)(1 + sqrt(1 - C_EB^2))/4 predicts F exactly.
x = (1 + c_ab) * (1 + np.sqrt(1 - c_eb**2)) / 4
print("largest prediction error:", np.max(np.abs(f_ab - x)))
print("fit slope / intercept:", summary["inset_slope"], summary["inset_intercept"])

# %%
# Plotting is optional; matplotlib is not a dependency of the package.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.plot(c_ab, f_ab, ".", ms=2)
    ax1.plot([0, 1], [0.5, 1], "k-", lw=1)
    ax1.set_xlabel("C_AB")
    ax1.set_ylabel("F_AB")
    ax2.plot(x, f_ab, ".", ms=2)
    ax2.set_xlabel("(1+C_AB)(1+sqrt(1-C_EB^2))/4")
    ax2.set_ylabel("F_AB")
    fig.tight_layout()
    fig.savefig("singlet_fraction_scatter.png", dpi=120)
    print("wrote singlet_fraction_scatter.png")
