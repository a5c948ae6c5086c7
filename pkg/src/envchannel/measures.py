"""Two-qubit entanglement measures and three-qubit monogamy bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import (
    DERIVED_TOL,
    as_density,
    as_state,
    herm_eig,
    partial_trace,
    wootters_lambdas,
)

__all__ = [
    "MAGIC_BASIS",
    "MonogamyViolation",
    "EntanglementSummary",
    "concurrence",
    "concurrence_pure",
    "singlet_fraction",
    "bipartition_concurrence",
    "three_tangle",
    "hyperdeterminant_tangle",
    "symmetric_singlet_fraction",
    "main_relation",
    "pair_factor",
    "summarize",
    "reduced_pairs",
]

_S2 = 1.0 / np.sqrt(2.0)

# Columns are the magic basis vectors in the computational basis:
# (|00>+|11>)/√2, i(|00>-|11>)/√2, i(|01>+|10>)/√2, (|01>-|10>)/√2.
MAGIC_BASIS = np.array(
    [
        [_S2, 1j * _S2, 0, 0],
        [0, 0, 1j * _S2, _S2],
        [0, 0, 1j * _S2, -_S2],
        [_S2, -1j * _S2, 0, 0],
    ],
    dtype=complex,
)


class MonogamyViolation(ArithmeticError):
    """Three-tangle came out clearly negative; an upstream quantity is wrong."""


def concurrence(rho, factor=None) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    ``factor`` is forwarded to :func:`~envchannel.qmat.wootters_lambdas`.
    """
    lam = wootters_lambdas(rho, factor=factor)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_pure(psi) -> float:
    """``2|ad - bc|`` for the two-qubit pure state ``(a, b, c, d)``."""
    a, b, c, d = as_state(psi, n_qubits=2, tol=1e-10)
    return float(2.0 * abs(a * d - b * c))


def singlet_fraction(rho) -> tuple[float, np.ndarray]:
    """Largest overlap of ``rho`` with a maximally entangled pure state.

    In the magic basis every maximally entangled state is a real unit vector
    up to a global phase, so ``<e|rho|e> = e^T Re(rho_M) e`` and the maximum is
    the top eigenvalue of ``Re(rho_M)``.

    Returns
    -------
    F : float
        The singlet (fully entangled) fraction.
    e_opt : ndarray
        A maximally entangled state attaining ``F``, in the computational
        basis. Ties are broken by the eigen-solver's ordering, which is
        deterministic for a given input.
    """
    rho = as_density(rho, dim=4, tol=1e-10)
    rho_m = MAGIC_BASIS.conj().T @ rho @ MAGIC_BASIS
    w, v = herm_eig(rho_m.real.astype(complex))
    coeffs = v[:, 0].real
    coeffs = coeffs / np.linalg.norm(coeffs)
    # fix the sign so the output is reproducible
    k = int(np.argmax(np.abs(coeffs)))
    if coeffs[k] < 0:
        coeffs = -coeffs
    e_opt = MAGIC_BASIS @ coeffs
    return float(w[0]), e_opt


def bipartition_concurrence(psi, solo: int) -> float:
    """Concurrence between qubit ``solo`` and the other two of a 3-qubit state.

    Equals ``2 sqrt(det rho_solo)``; a slightly negative determinant is
    clamped to zero.
    """
    psi = as_state(psi, n_qubits=3, tol=1e-10)
    if solo not in (0, 1, 2):
        raise ValueError(f"solo must be 0, 1 or 2, got {solo}")
    t = np.moveaxis(psi.reshape(2, 2, 2), solo, 0).reshape(2, 4)
    rho = t @ t.conj().T
    det = (rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real
    return float(2.0 * np.sqrt(max(det, 0.0)))


def three_tangle(c_b_ae: float, c_ab: float, c_eb: float, tol: float = DERIVED_TOL) -> float:
    """Residual tangle ``C_B(AE)^2 - C_AB^2 - C_EB^2``.

    Values in ``[-tol, 0)`` are returned as 0; anything lower raises
    :class:`MonogamyViolation`.
    """
    for name, x in (("c_b_ae", c_b_ae), ("c_ab", c_ab), ("c_eb", c_eb)):
        if not -tol <= x <= 1.0 + tol:
            raise ValueError(f"{name}={x!r} outside [0, 1]")
    tau = c_b_ae**2 - c_ab**2 - c_eb**2
    if tau < -tol:
        raise MonogamyViolation(f"negative three-tangle {tau:.3e}")
    return float(max(tau, 0.0))


def hyperdeterminant_tangle(psi) -> float:
    """Three-tangle of a pure 3-qubit state from Cayley's hyperdeterminant.

    Independent of any pairwise concurrence, and symmetric in the qubits.
    """
    a = as_state(psi, n_qubits=3, tol=1e-10).reshape(2, 2, 2)
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = (
        a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
        + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    )
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def symmetric_singlet_fraction(c_ab: float, tau: float, tol: float = DERIVED_TOL) -> float:
    """``(1 + C_AB)/4 * (1 + sqrt(C_AB^2 + tau))``, symmetric under A <-> B."""
    rad = c_ab**2 + tau
    if rad > 1.0 + tol or rad < -tol:
        raise ValueError(f"C_AB^2 + tau = {rad!r} outside [0, 1]")
    rad = min(max(rad, 0.0), 1.0)
    return (1.0 + c_ab) / 4.0 * (1.0 + np.sqrt(rad))


def main_relation(c_ab: float, c_eb: float) -> float:
    """Singlet fraction predicted from the distributed entanglement.

    ``(1 + C_AB)(1 + sqrt(1 - C_EB^2)) / 4``.
    """
    return (1.0 + c_ab) * (1.0 + np.sqrt(max(0.0, 1.0 - c_eb**2))) / 4.0


def pair_factor(psi, keep: tuple[int, int]) -> np.ndarray:
    """4x2 amplitude matrix ``X`` of a 3-qubit state with ``rho_keep = X X^dagger``.

    Rows run over the kept pair in the order given by ``keep``.
    """
    psi = np.asarray(psi, dtype=complex).reshape(2, 2, 2)
    other = ({0, 1, 2} - set(keep)).pop()
    return np.transpose(psi, (keep[0], keep[1], other)).reshape(4, 2)


@dataclass(frozen=True)
class EntanglementSummary:
    """Entanglement distributed over the qubits ``(A, B, E)`` of a pure state."""

    C_AB: float
    C_EB: float
    C_AE: float
    C_B_AE: float
    tau_ABE: float
    F_AB: float

    @property
    def monogamy_residual(self) -> float:
        return abs(self.C_AB**2 + self.C_EB**2 + self.tau_ABE - self.C_B_AE**2)


def summarize(psi_abe, check_monogamy: bool = True) -> EntanglementSummary:
    """All pairwise measures of a pure 3-qubit state ordered ``(A, B, E)``.

    Pair concurrences come from the purification amplitudes, which avoids the
    rounding noise of square-rooting near-zero eigenvalues. ``tau_ABE`` comes
    from the hyperdeterminant, so the monogamy balance is a genuine check. With
    ``check_monogamy`` set, a balance off by more than ``1e-9`` raises
    :class:`MonogamyViolation`.
    """
    psi = as_state(psi_abe, n_qubits=3, tol=1e-10)
    x_ab = pair_factor(psi, (0, 1))
    x_eb = pair_factor(psi, (2, 1))
    x_ae = pair_factor(psi, (0, 2))
    rho_ab = x_ab @ x_ab.conj().T
    rho_eb = x_eb @ x_eb.conj().T
    rho_ae = x_ae @ x_ae.conj().T
    c_ab = concurrence(rho_ab, factor=x_ab)
    c_eb = concurrence(rho_eb, factor=x_eb)
    c_ae = concurrence(rho_ae, factor=x_ae)
    c_b = bipartition_concurrence(psi, solo=1)
    tau = hyperdeterminant_tangle(psi)
    if check_monogamy:
        residual_tau = three_tangle(c_b, c_ab, c_eb)
        if abs(residual_tau - tau) > DERIVED_TOL:
            raise MonogamyViolation(
                f"monogamy balance off by {abs(residual_tau - tau):.3e}"
            )
    f_ab, _ = singlet_fraction(rho_ab)
    return EntanglementSummary(c_ab, c_eb, c_ae, c_b, float(tau), f_ab)


def reduced_pairs(psi_abe) -> dict[str, np.ndarray]:
    """Two-qubit reductions ``AB``, ``EB`` and ``AE`` of a state over ``(A, B, E)``."""
    rho = np.outer(psi_abe, np.conj(psi_abe))
    rho_ab = partial_trace(rho, keep=(0, 1))
    rho_ae = partial_trace(rho, keep=(0, 2))
    # partial_trace keeps ascending order (B, E); reorder to (E, B)
    rho_be = partial_trace(rho, keep=(1, 2))
    swap = np.eye(4)[[0, 2, 1, 3]]
    rho_eb = swap @ rho_be @ swap
    return {"AB": rho_ab, "EB": rho_eb, "AE": rho_ae}
