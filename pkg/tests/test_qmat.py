import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envchannel import qmat
from envchannel.qmat import I2, SX, SY, SZ, kron, ket, partial_trace, projector

from conftest import random_density, random_local_unitary, werner

PHI = np.array([1, 0, 0, 1]) / np.sqrt(2)
GHZ = (ket("000") + ket("111")) / np.sqrt(2)


def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_basis_flip():
    assert np.allclose(kron(SX, SX) @ ket("00"), ket("11"))


def test_kron_trace_multiplies():
    assert np.trace(kron(projector(ket("0")), I2)) == pytest.approx(2.0)


def test_kron_rejects_overflow():
    with pytest.raises(ValueError):
        kron(np.eye(8), np.eye(4))


def test_kron_rejects_nan():
    bad = np.eye(2)
    bad[0, 1] = np.nan
    with pytest.raises(ValueError):
        kron(bad, I2)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_kron_associative_and_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) < 1e-12
    assert np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d))) < 1e-12


def test_partial_trace_product_state():
    rho = np.kron(projector(PHI), projector(ket("0")))
    assert np.allclose(partial_trace(rho, keep=(0, 1)), projector(PHI), atol=1e-15)


def test_partial_trace_bell_half():
    assert np.allclose(partial_trace(projector(PHI), keep=[0]), I2 / 2, atol=1e-15)


def test_partial_trace_ghz_by_hand():
    # rho_AB = sum_e <e|GHZ><GHZ|e> = 1/2 (|00><00| + |11><11|)
    expected = 0.5 * (projector(ket("00")) + projector(ket("11")))
    assert np.allclose(partial_trace(projector(GHZ), keep=(0, 1)), expected, atol=1e-15)


def test_partial_trace_keeps_ascending_order():
    # |0>_A |1>_B |+>_E, keep (B, A) still returns (A, B)
    psi = np.kron(np.kron(ket("0"), ket("1")), np.array([1, 1]) / np.sqrt(2))
    red = partial_trace(projector(psi), keep=(1, 0))
    assert np.allclose(red, projector(ket("01")))


def test_partial_trace_mixed_dims():
    rng = np.random.default_rng(3)
    a = random_density(rng, 2)
    b = random_density(rng, 8)
    rho = np.kron(a, b)
    assert np.allclose(partial_trace(rho, keep=[0], dims=(2, 8)), a)
    assert np.allclose(partial_trace(rho, keep=[1], dims=(2, 8)), b)


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4) / 4, keep=[0], dims=(2, 4))


@pytest.mark.parametrize("dim", [2, 4, 8, 16])
def test_partial_trace_everything_is_trace(dim, rng):
    rho = random_density(rng, dim)
    assert abs(partial_trace(rho, keep=[])[0, 0] - 1.0) < 1e-12


def test_herm_eig_examples():
    w, _ = qmat.herm_eig(np.eye(4))
    assert np.allclose(w, 1.0)
    w, _ = qmat.herm_eig(SZ)
    assert np.allclose(w, [1, -1])
    w, _ = qmat.herm_eig(projector(PHI))
    assert np.allclose(w, [1, 0, 0, 0], atol=1e-15)


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 8, 16]))
@settings(max_examples=40, deadline=None)
def test_herm_eig_reconstructs(seed, dim):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = x + x.conj().T
    w, v = qmat.herm_eig(h)
    assert np.all(np.diff(w) <= 0)
    assert np.max(np.abs(h - (v * w) @ v.conj().T)) < 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-12


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        qmat.herm_eig(np.array([[0, 1], [0, 0]]))


def test_as_density_validation():
    with pytest.raises(ValueError):
        qmat.as_density(np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        qmat.as_density(np.diag([1.5, -0.5]))
    qmat.as_density(np.eye(4) / 4)


def _lambdas_oracle(rho):
    """Brute force: general eigenvalues of rho @ rho_tilde."""
    yy = np.kron(SY, SY)
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    return np.sort(np.sqrt(np.abs(ev.real)))[::-1]


def test_wootters_lambdas_bell():
    assert np.allclose(qmat.wootters_lambdas(projector(PHI)), [1, 0, 0, 0], atol=1e-15)


def test_wootters_lambdas_maximally_mixed():
    # rho rho~ = I/16 by hand
    assert np.allclose(qmat.wootters_lambdas(np.eye(4) / 4), [0.25] * 4, atol=1e-15)


def test_wootters_lambdas_werner_against_oracle():
    rho = werner(0.8)
    lam = qmat.wootters_lambdas(rho)
    assert np.allclose(lam, _lambdas_oracle(rho), atol=1e-12)
    assert lam[0] - lam[1:].sum() == pytest.approx(0.7, abs=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_wootters_lambdas_match_brute_force(seed):
    rho = random_density(np.random.default_rng(seed))
    assert np.allclose(qmat.wootters_lambdas(rho), _lambdas_oracle(rho), atol=1e-8)


def test_wootters_lambdas_factor_route():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    x /= np.linalg.norm(x)
    rho = x @ x.conj().T
    assert np.allclose(qmat.wootters_lambdas(rho, factor=x), qmat.wootters_lambdas(rho), atol=1e-7)
    assert np.allclose(qmat.wootters_lambdas(rho, factor=x), _lambdas_oracle(rho), atol=1e-7)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_wootters_lambdas_local_unitary_invariant(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng)
    u = random_local_unitary(rng)
    assert np.allclose(qmat.wootters_lambdas(u @ rho @ u.conj().T), qmat.wootters_lambdas(rho), atol=1e-10)
