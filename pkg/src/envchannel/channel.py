"""A Bell pair whose one half interacts unitarily with a qubit environment.

The three-qubit state is ordered ``(A, B, E)``. An interaction unitary is a
4x4 matrix on the ordered pair ``(A, E)`` (or ``(B, E)`` when the environment
couples to Bob), with basis index ``2*system + env``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import I2, as_matrix, as_state, partial_trace

__all__ = [
    "PHI_PLUS",
    "PQParams",
    "KrausSet",
    "NotMaximallyEntangled",
    "as_unitary",
    "is_maximally_entangled",
    "evolve",
    "kraus_from_unitary",
    "apply_kraus",
    "choi_state",
    "pq_unitary",
    "pq_closed_forms",
    "phi_plus_overlap_pq",
    "partially_entangled",
]

PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0)
_UNITARY_TOL = 1e-10


class NotMaximallyEntangled(ValueError):
    pass


def as_unitary(u, tol: float = _UNITARY_TOL) -> np.ndarray:
    """Validate a 4x4 interaction unitary."""
    m = as_matrix(u)
    if m.shape != (4, 4):
        raise ValueError(f"interaction unitary must be 4x4, got {m.shape}")
    if np.max(np.abs(m.conj().T @ m - np.eye(4))) > tol:
        raise ValueError("interaction matrix is not unitary")
    return m


def is_maximally_entangled(psi, tol: float = 1e-9) -> bool:
    psi = as_state(psi, n_qubits=2, tol=1e-10)
    rho = np.outer(psi, psi.conj())
    half = 0.5 * np.eye(2)
    return bool(
        np.max(np.abs(partial_trace(rho, keep=[0]) - half)) <= tol
        and np.max(np.abs(partial_trace(rho, keep=[1]) - half)) <= tol
    )


def partially_entangled(theta: float) -> np.ndarray:
    """``cos(theta)|00> + sin(theta)|11>``."""
    return np.array([np.cos(theta), 0, 0, np.sin(theta)], dtype=complex)


def evolve(u, initial_channel=None, env0: int = 0, coupled: str = "A", strict: bool = True) -> np.ndarray:
    """Post-interaction state ``(U ⊗ 1)(|channel> ⊗ |env0>)`` over ``(A, B, E)``.

    Parameters
    ----------
    u : array_like
        4x4 unitary on ``(coupled qubit, E)``.
    initial_channel : array_like, optional
        Two-qubit state of ``(A, B)``; defaults to ``|phi+>``.
    env0 : {0, 1}
        Initial basis state of the environment.
    coupled : {"A", "B"}
        Which half of the channel meets the environment.
    strict : bool
        Reject initial channels that are not maximally entangled. Turn off for
        the partial-entanglement experiment.

    Returns
    -------
    ndarray
        Normalized length-8 state vector, index ``4*a + 2*b + e``.
    """
    u = as_unitary(u)
    chan = PHI_PLUS if initial_channel is None else as_state(initial_channel, n_qubits=2, tol=1e-10)
    if strict and not is_maximally_entangled(chan):
        raise NotMaximallyEntangled("initial channel state is not maximally entangled")
    if env0 not in (0, 1):
        raise ValueError("env0 must be 0 or 1")
    env = np.zeros(2, dtype=complex)
    env[env0] = 1.0
    psi = np.kron(chan, env).reshape(2, 2, 2)
    u4 = u.reshape(2, 2, 2, 2)
    if coupled == "A":
        out = np.einsum("xyae,abe->xby", u4, psi)
    elif coupled == "B":
        out = np.einsum("xybe,abe->axy", u4, psi)
    else:
        raise ValueError(f"coupled must be 'A' or 'B', got {coupled!r}")
    out = out.reshape(8)
    return out / np.linalg.norm(out)


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators of a qubit map.

    ``which`` is ``"Lambda"`` for the map onto the channel qubit (environment
    traced out) or ``"Gamma"`` for the map onto the environment (channel qubit
    traced out).
    """

    operators: tuple
    which: str

    def __post_init__(self):
        if self.which not in ("Lambda", "Gamma"):
            raise ValueError(f"which must be 'Lambda' or 'Gamma', got {self.which!r}")
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if any(k.shape != (2, 2) for k in ops):
            raise ValueError("Kraus operators must be 2x2")
        object.__setattr__(self, "operators", ops)
        if self.completeness_residual() > _UNITARY_TOL:
            raise ArithmeticError("Kraus operators violate completeness")

    def completeness_residual(self) -> float:
        total = sum(k.conj().T @ k for k in self.operators)
        return float(np.max(np.abs(total - I2)))

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)


def kraus_from_unitary(u, which: str = "Lambda") -> KrausSet:
    """Read Kraus operators off the ``|0>_E`` input column of ``u``.

    ``Lambda``: ``[M_k]_ij = <i_A k_E|U|j_A 0_E>``.
    ``Gamma``:  ``[N_k]_ij = <k_A i_E|U|j_A 0_E>``, so ``[N_k]_ij == [M_i]_kj``.
    """
    u4 = as_unitary(u).reshape(2, 2, 2, 2)  # (sys_out, env_out, sys_in, env_in)
    col = u4[:, :, :, 0]
    if which == "Lambda":
        ops = tuple(col[:, k, :].copy() for k in range(2))
    elif which == "Gamma":
        ops = tuple(col[k, :, :].copy() for k in range(2))
    else:
        raise ValueError(f"which must be 'Lambda' or 'Gamma', got {which!r}")
    return KrausSet(ops, which)


def apply_kraus(ks: KrausSet, rho) -> np.ndarray:
    """``sum_k (K_k ⊗ 1) rho (K_k ⊗ 1)^dagger`` on a two-qubit operator."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError("apply_kraus acts on 4x4 operators")
    out = np.zeros((4, 4), dtype=complex)
    for k in ks:
        kk = np.kron(k, I2)
        out += kk @ rho @ kk.conj().T
    return out


def choi_state(ks: KrausSet) -> np.ndarray:
    """``(map ⊗ 1)|phi+><phi+|``, the state isomorphic to the map."""
    return apply_kraus(ks, np.outer(PHI_PLUS, PHI_PLUS.conj()))


@dataclass(frozen=True)
class PQParams:
    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            x = getattr(self, name)
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name}={x!r} outside [0, 1]")


def _params(params, q) -> PQParams:
    if isinstance(params, PQParams):
        return params
    return PQParams(float(params), float(q))


def pq_unitary(params, q: float | None = None) -> np.ndarray:
    """The two-parameter interaction family on ``(A, E)``.

    ``|00> -> sqrt(1-q)|00> + sqrt(q)|11>`` and
    ``|10> -> sqrt(1-p)|10> + sqrt(p)|01>``. The images of ``|01>`` and
    ``|11>`` are never probed (the environment starts in ``|0>``); they are
    completed as real rotations: ``|01> -> sqrt(1-p)|01> - sqrt(p)|10>``,
    ``|11> -> sqrt(1-q)|11> - sqrt(q)|00>``.

    Accepts ``pq_unitary(PQParams(p, q))`` or ``pq_unitary(p, q)``.
    """
    pq = _params(params, q)
    cp, sp = np.sqrt(1.0 - pq.p), np.sqrt(pq.p)
    cq, sq = np.sqrt(1.0 - pq.q), np.sqrt(pq.q)
    u = np.zeros((4, 4), dtype=complex)
    # columns: |00>, |01>, |10>, |11> of (A, E)
    u[:, 0] = [cq, 0, 0, sq]
    u[:, 1] = [0, cp, -sp, 0]
    u[:, 2] = [0, sp, cp, 0]
    u[:, 3] = [-sq, 0, 0, cq]
    return u


def phi_plus_overlap_pq(params, q: float | None = None) -> float:
    """``<phi+|rho_AB|phi+>`` for :func:`pq_unitary`.

    ``(2 - p - q + 2 sqrt((1-p)(1-q))) / 4``. This is the singlet fraction only
    when ``p + q <= 1``; beyond that ``|psi+>`` overlaps more.
    """
    pq = _params(params, q)
    p, q = pq.p, pq.q
    return float((2 - p - q + 2 * np.sqrt((1 - p) * (1 - q))) / 4)


def pq_closed_forms(params, q: float | None = None) -> tuple[float, float, float]:
    """Closed-form ``(C_AB, F_AB, C_EB)`` for :func:`pq_unitary`.

    For ``p + q > 1`` the singlet fraction is the ``|phi+>`` overlap evaluated
    at ``(1 - p, 1 - q)``, which equals the ``|psi+>`` overlap at ``(p, q)``.
    """
    pq = _params(params, q)
    p, q = pq.p, pq.q
    c_ab = abs(np.sqrt((1 - p) * (1 - q)) - np.sqrt(p * q))
    if p + q <= 1.0:
        f_ab = phi_plus_overlap_pq(p, q)
    else:
        f_ab = phi_plus_overlap_pq(1.0 - p, 1.0 - q)
    c_eb = abs(np.sqrt((1 - p) * q) - np.sqrt(p * (1 - q)))
    return float(c_ab), float(f_ab), float(c_eb)
