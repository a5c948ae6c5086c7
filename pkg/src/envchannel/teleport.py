"""Standard teleportation over the decohered channel.

The four-qubit register is ordered ``(u, A, B, E)``: the unknown input, Alice's
half, Bob's half and the environment. Alice measures ``(u, A)`` in the Bell
basis and Bob applies a fixed unitary per outcome.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import concurrence_pure, singlet_fraction
from .qmat import DERIVED_TOL, I2, SX, SY, SZ, as_density, as_state

__all__ = [
    "AXES",
    "ZERO_PROB",
    "TeleportOutcome",
    "FidelityReport",
    "bell_states",
    "bloch_state",
    "pauli_corrections",
    "sts_run",
    "optimal_correction",
    "average_fidelity",
    "fidelity_formula",
    "cc_and_qc_bounds",
    "config_b_fidelity",
    "fidelity_report",
]

ZERO_PROB = 1e-14

# +x, -x, +y, -y, +z, -z: matches the sphere's first and second moments
AXES = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    dtype=float,
)

# Bell basis as (1 ⊗ P)|phi+>: phi+, phi-, psi+, psi-
_BELL_PAULIS = (I2, SZ, SX, SX @ SZ)


def bell_states() -> np.ndarray:
    """Rows are ``|phi+>, |phi->, |psi+>, |psi->``."""
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0)
    return np.array([np.kron(I2, p) @ phi for p in _BELL_PAULIS])


def pauli_corrections() -> tuple[np.ndarray, ...]:
    """Bob's unitaries for outcomes ``phi+, phi-, psi+, psi-`` over ``|phi+>``.

    Projecting ``(u, A)`` onto ``(1 ⊗ P)|phi+>`` leaves Bob with ``P* |s>``,
    which ``P^T`` undoes.
    """
    return tuple(p.T.copy() for p in _BELL_PAULIS)


def bloch_state(s) -> np.ndarray:
    """Pure qubit state with Bloch vector ``s``."""
    s = np.asarray(s, dtype=float)
    n = np.linalg.norm(s)
    if abs(n - 1.0) > 1e-12:
        raise ValueError(f"Bloch vector must have unit length, got {n!r}")
    theta = np.arccos(np.clip(s[2], -1.0, 1.0))
    phi = np.arctan2(s[1], s[0])
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex)


@dataclass(frozen=True)
class TeleportOutcome:
    """One Bell-measurement outcome.

    ``eb_state`` is the normalized ``(E, B)`` state before Bob's correction;
    ``bob_state`` is Bob's reduced state after it. Zero-probability outcomes
    carry ``None`` for the states and NaN for the derived numbers.
    """

    alpha: int
    probability: float
    eb_state: np.ndarray | None
    bob_state: np.ndarray | None
    q_alpha: float
    c_eb_alpha: float

    @property
    def defined(self) -> bool:
        return self.eb_state is not None


def sts_run(total, s, correction=None) -> list[TeleportOutcome]:
    """Teleport the pure state with Bloch vector ``s`` through ``total``.

    Parameters
    ----------
    total : array_like
        Three-qubit state over ``(A, B, E)``, as returned by
        :func:`envchannel.channel.evolve`.
    s : array_like
        Unit Bloch vector of the input.
    correction : sequence of four 2x2 unitaries, optional
        Bob's unitary per outcome; defaults to :func:`pauli_corrections`.

    Returns
    -------
    list of TeleportOutcome
        Indexed by ``alpha`` in the order of :func:`bell_states`.
    """
    psi = as_state(total, n_qubits=3, tol=1e-10).reshape(2, 2, 2)
    corr = pauli_corrections() if correction is None else correction
    if len(corr) != 4:
        raise ValueError("need one correction per Bell outcome")
    inp = bloch_state(s)
    bell = bell_states().reshape(4, 2, 2)
    # amplitudes[alpha, e, b] = sum_{u,a} conj(bell[alpha,u,a]) inp[u] psi[a,b,e]
    amps = np.einsum("xua,u,abe->xeb", bell.conj(), inp, psi)
    out = []
    for alpha in range(4):
        m = amps[alpha]
        prob = float(np.vdot(m, m).real)
        if prob < ZERO_PROB:
            out.append(TeleportOutcome(alpha, prob, None, None, float("nan"), float("nan")))
            continue
        m = m / np.sqrt(prob)
        eb = m.reshape(4)
        # Bob's correction acts on the second factor of (E, B)
        m_corr = m @ np.asarray(corr[alpha], dtype=complex).T
        bob = m_corr.T @ m_corr.conj()
        c = concurrence_pure(eb)
        q = float(np.sqrt(max(0.0, 1.0 - c * c)))
        out.append(TeleportOutcome(alpha, prob, eb, bob, q, c))
    return out


def optimal_correction(rho_ab) -> tuple[np.ndarray, ...]:
    """Per-outcome corrections that attain ``(2 F_AB + 1) / 3``.

    Write the maximizing state as ``(1 ⊗ V)|phi+>``; Bob first undoes ``V``
    and then applies the Pauli correction.
    """
    rho_ab = as_density(rho_ab, dim=4, tol=1e-10)
    _, e_opt = singlet_fraction(rho_ab)
    # (1 ⊗ V)|phi+> has amplitude matrix V^T / sqrt(2)
    v = np.sqrt(2.0) * e_opt.reshape(2, 2).T
    v_dag = v.conj().T
    return tuple(p @ v_dag for p in pauli_corrections())


def _fidelity_at(total, s, correction) -> tuple[float, list[TeleportOutcome]]:
    outcomes = sts_run(total, s, correction)
    target = bloch_state(s)
    f = 0.0
    for o in outcomes:
        if o.defined:
            f += o.probability * float(np.vdot(target, o.bob_state @ target).real)
    return f, outcomes


def average_fidelity(total, correction=None) -> float:
    """Input-averaged teleportation fidelity.

    The per-input fidelity is at most quadratic in the Bloch vector, so the
    mean over the six axis directions equals the uniform sphere average.
    """
    return float(np.mean([_fidelity_at(total, s, correction)[0] for s in AXES]))


def fidelity_formula(c_ab: float, c_eb: float) -> float:
    r = np.sqrt(max(0.0, 1.0 - c_eb**2))
    return 0.5 + r / 6.0 + (1.0 + r) / 6.0 * c_ab


def cc_and_qc_bounds(c_eb: float) -> tuple[float, float]:
    """Best fidelity with classical communication only, and with an ideal channel.

    Both are limited by Bob's residual entanglement with the environment.
    """
    r = np.sqrt(max(0.0, 1.0 - c_eb**2))
    return 0.5 + r / 6.0, 0.5 + r / 2.0


def config_b_fidelity(c_ab: float, c_ae: float) -> float:
    """Fidelity written with ``C_AE``, for the environment coupled to Bob."""
    r = np.sqrt(max(0.0, 1.0 - c_ae**2))
    return (3.0 + r) / 6.0 + (1.0 + r) / 6.0 * c_ab


@dataclass(frozen=True)
class FidelityReport:
    f_simulated: float
    f_formula: float
    f_cc_max: float
    f_qc_max: float
    f_decomposition: float
    convexity_ok: bool
    convexity_margin: float


def fidelity_report(total, c_ab: float, c_eb: float, rho_ab) -> FidelityReport:
    """Simulate the optimal scheme on ``total`` and compare with the formulas.

    ``convexity_margin`` is the smallest ``sum_a P_a C_EB^a - C_EB`` over the
    six axis inputs.
    """
    corr = optimal_correction(rho_ab)
    fids = []
    margin = np.inf
    for s in AXES:
        f, outcomes = _fidelity_at(total, s, corr)
        fids.append(f)
        avg_c = sum(o.probability * o.c_eb_alpha for o in outcomes if o.defined)
        margin = min(margin, avg_c - c_eb)
    f_cc, f_qc = cc_and_qc_bounds(c_eb)
    return FidelityReport(
        f_simulated=float(np.mean(fids)),
        f_formula=fidelity_formula(c_ab, c_eb),
        f_cc_max=f_cc,
        f_qc_max=f_qc,
        f_decomposition=f_cc + f_qc / 3.0 * c_ab,
        convexity_ok=bool(margin >= -DERIVED_TOL),
        convexity_margin=float(margin),
    )
