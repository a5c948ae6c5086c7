"""Entanglement bookkeeping for a Bell pair decohered by a two-level environment.

Submodules
----------
qmat      dense complex linear algebra (partial trace, eigen-solvers, Wootters lambdas)
measures  concurrence, singlet fraction, three-tangle
channel   interaction unitaries, Kraus forms, the (p, q) family
sampling  seeded Haar unitaries and Bloch vectors
teleport  standard teleportation simulator and fidelity formulas
harness   experiments, verification suite and record output
"""
from . import channel, harness, measures, qmat, sampling, teleport
from .channel import PHI_PLUS, evolve, kraus_from_unitary, pq_closed_forms, pq_unitary
from .measures import concurrence, main_relation, singlet_fraction, summarize
from .sampling import SeedSpec, haar_unitary

__version__ = "0.1.0"

__all__ = [
    "channel",
    "harness",
    "measures",
    "qmat",
    "sampling",
    "teleport",
    "PHI_PLUS",
    "evolve",
    "kraus_from_unitary",
    "pq_closed_forms",
    "pq_unitary",
    "concurrence",
    "main_relation",
    "singlet_fraction",
    "summarize",
    "SeedSpec",
    "haar_unitary",
]
