"""Dense complex linear algebra for few-qubit states and operators.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. Every
dimension is a power of two no larger than 16.

Qubit ordering: the leftmost Kronecker factor is the lowest-index qubit, so a
three-qubit state over ``(A, B, E)`` has amplitude ``psi[4*a + 2*b + e]``.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

__all__ = [
    "VALIDATION_TOL",
    "DERIVED_TOL",
    "MAX_DIM",
    "NumericFailure",
    "as_matrix",
    "as_state",
    "as_density",
    "ket",
    "projector",
    "dag",
    "kron",
    "partial_trace",
    "herm_eig",
    "sqrtm_psd",
    "wootters_lambdas",
    "I2",
    "SX",
    "SY",
    "SZ",
]

VALIDATION_TOL = 1e-12
DERIVED_TOL = 1e-9
HERMITIAN_TOL = 1e-10
MAX_DIM = 16
_ALLOWED_DIMS = (1, 2, 4, 8, 16)

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_SYSY = np.kron(SY, SY)
# eigenvalues at or below this are rounding noise in unit-trace 4x4 matrices
_RANK_CUTOFF = 1e-14


class NumericFailure(ArithmeticError):
    """An eigen-solver or a derived quantity produced an unusable result."""


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite complex 2-D array with power-of-two dims."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.shape[0] not in _ALLOWED_DIMS or m.shape[1] not in _ALLOWED_DIMS:
        raise ValueError(f"matrix dims must be in {_ALLOWED_DIMS}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    return m


def as_state(psi, n_qubits: int | None = None, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a normalized pure state vector over 1-4 qubits."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    n = int(round(np.log2(v.size))) if v.size else -1
    if v.size not in (2, 4, 8, 16) or 2**n != v.size:
        raise ValueError(f"state length must be 2, 4, 8 or 16, got {v.size}")
    if n_qubits is not None and n != n_qubits:
        raise ValueError(f"expected a {n_qubits}-qubit state, got {n} qubits")
    if not np.all(np.isfinite(v)):
        raise ValueError("state contains NaN or Inf")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm={norm!r})")
    return v


def as_density(rho, dim: int | None = None, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite.

    The eigenvalue floor is ``-1e-10`` regardless of ``tol``.
    """
    m = as_matrix(rho)
    if m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4, 8, 16):
        raise ValueError(f"density matrix must be square with dim 2-16, got {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"expected dim {dim}, got {m.shape[0]}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace is {tr.real!r}, not 1")
    if np.linalg.eigvalsh(m)[0] < -HERMITIAN_TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return m


def ket(bits: str) -> np.ndarray:
    """Computational basis state from a bit string, e.g. ``ket("01")``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def projector(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def dag(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; refuses results larger than 16x16."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise ValueError(f"kron result {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    return np.kron(a, b)


def partial_trace(rho, keep: Sequence[int], dims: Sequence[int] | None = None) -> np.ndarray:
    """Reduce ``rho`` to the subsystems listed in ``keep``.

    Parameters
    ----------
    rho : ndarray
        Square operator on the tensor product of ``dims``.
    keep : sequence of int
        Subsystem indices to retain. The output keeps them in ascending order.
        An empty ``keep`` returns the 1x1 scalar trace.
    dims : sequence of int, optional
        Per-subsystem dimensions; defaults to all qubits.

    Returns
    -------
    ndarray
        The reduced operator.
    """
    m = as_matrix(rho)
    d = m.shape[0]
    if m.shape[1] != d:
        raise ValueError("partial_trace needs a square matrix")
    if dims is None:
        n = int(round(np.log2(d)))
        dims = (2,) * n
    dims = tuple(int(x) for x in dims)
    if int(np.prod(dims)) != d:
        raise ValueError(f"dims {dims} do not multiply to {d}")
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]

    t = m.reshape(dims + dims)
    # contract each traced pair, highest index first so axis numbers stay valid
    for k in sorted(traced, reverse=True):
        n_cur = t.ndim // 2
        t = np.trace(t, axis1=k, axis2=k + n_cur)
    dk = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(dk, dk)


def herm_eig(h, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``h == v @ diag(w) @ v.conj().T`` and the columns of
    ``v`` orthonormal.
    """
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise ValueError("herm_eig needs a square matrix")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")
    m = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(str(exc)) from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def sqrtm_psd(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Square root of a positive semidefinite matrix.

    Eigenvalues down to ``-tol`` are clamped to zero; anything more negative
    is a :class:`NumericFailure`.
    """
    w, v = herm_eig(h)
    if w[-1] < -tol:
        raise NumericFailure(f"matrix is not PSD (min eigenvalue {w[-1]:.3e})")
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def wootters_lambdas(rho, factor=None) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho @ rho_tilde``, descending.

    ``rho_tilde = (Y ⊗ Y) rho* (Y ⊗ Y)``. With any factorization
    ``rho = X X^dagger`` the nonzero spectrum of ``rho @ rho_tilde`` is the
    squared singular spectrum of ``X^T (Y ⊗ Y) X``, so the lambdas are read off
    an SVD instead of a square root of a possibly tiny eigenvalue.

    Parameters
    ----------
    rho : ndarray
        Two-qubit density matrix.
    factor : ndarray, optional
        A 4xk matrix ``X`` with ``rho == X @ X.conj().T``, e.g. the amplitude
        matrix of a purification. When omitted, ``X = V sqrt(w)`` from the
        eigen-decomposition of ``rho``, with eigenvalues below ``1e-14``
        treated as exact zeros.
    """
    rho = as_density(rho, dim=4, tol=1e-10)
    if factor is None:
        w, v = herm_eig(rho)
        if w[-1] < -HERMITIAN_TOL:
            raise NumericFailure(f"density matrix not PSD (min eigenvalue {w[-1]:.3e})")
        w = np.where(w > _RANK_CUTOFF, w, 0.0)
        x = v * np.sqrt(w)
    else:
        x = np.asarray(factor, dtype=complex)
        if x.ndim != 2 or x.shape[0] != 4:
            raise ValueError(f"factor must be 4xk, got shape {x.shape}")
    try:
        s = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(str(exc)) from exc
    lam = np.zeros(4)
    k = min(4, s.size)
    lam[:k] = s[:k]
    return lam
