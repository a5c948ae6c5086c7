import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from envchannel import channel, measures
from envchannel.qmat import ket, partial_trace, projector
from envchannel.sampling import haar_unitary

from conftest import random_density, random_local_unitary, random_state, werner

PHI = np.array([1, 0, 0, 1]) / np.sqrt(2)
GHZ = (ket("000") + ket("111")) / np.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def _max_entangled(params):
    """(1 ⊗ V)|phi+> for V = exp(i a) Rz(b) Ry(c) Rz(d)."""
    a, b, c, d = params
    rz = lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    ry = np.array([[np.cos(c / 2), -np.sin(c / 2)], [np.sin(c / 2), np.cos(c / 2)]])
    v = np.exp(1j * a) * rz(b) @ ry @ rz(d)
    return np.kron(np.eye(2), v) @ PHI


def _singlet_fraction_oracle(rho, starts=12, seed=0):
    """Numerical maximization of <e|rho|e> over maximally entangled e."""
    rng = np.random.default_rng(seed)
    f = lambda x: -np.vdot(_max_entangled(x), rho @ _max_entangled(x)).real
    best = max(-minimize(f, rng.uniform(0, 2 * np.pi, 4), method="BFGS").fun for _ in range(starts))
    return best


def test_concurrence_examples():
    assert measures.concurrence(projector(PHI)) == pytest.approx(1.0, abs=1e-12)
    assert measures.concurrence(projector(ket("00"))) == pytest.approx(0.0, abs=1e-12)
    # max(0, (3w - 1)/2) at w = 0.8
    assert measures.concurrence(werner(0.8)) == pytest.approx(0.7, abs=1e-12)


def test_concurrence_werner_separable():
    assert measures.concurrence(werner(0.3)) == 0.0


def test_concurrence_pure_examples():
    assert measures.concurrence_pure(PHI) == pytest.approx(1.0)
    assert measures.concurrence_pure(ket("01")) == 0.0
    psi = np.cos(np.pi / 8) * ket("00") + np.sin(np.pi / 8) * ket("11")
    assert measures.concurrence_pure(psi) == pytest.approx(0.7071067811865475, abs=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_concurrence_pure_agrees_with_mixed(seed):
    psi = random_state(np.random.default_rng(seed), 2)
    assert abs(measures.concurrence(projector(psi)) - measures.concurrence_pure(psi)) < 1e-10


def test_singlet_fraction_examples():
    f, e = measures.singlet_fraction(projector(PHI))
    assert f == pytest.approx(1.0, abs=1e-12)
    assert abs(abs(np.vdot(e, PHI)) - 1) < 1e-12
    f, _ = measures.singlet_fraction(np.eye(4) / 4)
    assert f == pytest.approx(0.25, abs=1e-12)
    f, _ = measures.singlet_fraction(werner(0.8))
    assert f == pytest.approx(0.85, abs=1e-12)


def test_singlet_fraction_werner_against_optimizer():
    assert _singlet_fraction_oracle(werner(0.8)) == pytest.approx(0.85, abs=1e-8)


def test_singlet_fraction_sampled_never_exceeds():
    rng = np.random.default_rng(11)
    rho = random_density(rng)
    f, _ = measures.singlet_fraction(rho)
    for _ in range(2000):
        e = np.kron(np.eye(2), haar_unitary(2, rng)) @ PHI
        assert np.vdot(e, rho @ e).real <= f + 1e-12


@pytest.mark.parametrize("seed", range(8))
def test_singlet_fraction_matches_optimizer(seed):
    rho = random_density(np.random.default_rng(100 + seed), rank=2)
    f, e = measures.singlet_fraction(rho)
    assert _singlet_fraction_oracle(rho, seed=seed) == pytest.approx(f, abs=1e-7)
    # e_opt attains F and is maximally entangled
    assert np.vdot(e, rho @ e).real == pytest.approx(f, abs=1e-9)
    assert np.allclose(partial_trace(projector(e), keep=[0]), np.eye(2) / 2, atol=1e-9)
    assert np.allclose(partial_trace(projector(e), keep=[1]), np.eye(2) / 2, atol=1e-9)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_pure_state_singlet_fraction_is_half_one_plus_concurrence(seed):
    psi = random_state(np.random.default_rng(seed), 2)
    f, _ = measures.singlet_fraction(projector(psi))
    assert abs(f - (1 + measures.concurrence_pure(psi)) / 2) < 1e-9


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_singlet_fraction_below_pure_line(seed, rank):
    rho = random_density(np.random.default_rng(seed), rank=rank)
    f, _ = measures.singlet_fraction(rho)
    assert f <= (1 + measures.concurrence(rho)) / 2 + 1e-9


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_measures_local_unitary_invariant(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng)
    u = random_local_unitary(rng)
    rho2 = u @ rho @ u.conj().T
    assert abs(measures.concurrence(rho2) - measures.concurrence(rho)) < 1e-9
    assert abs(measures.singlet_fraction(rho2)[0] - measures.singlet_fraction(rho)[0]) < 1e-9


def test_bipartition_concurrence_examples():
    bell_e = np.kron(PHI, ket("0"))
    assert measures.bipartition_concurrence(bell_e, solo=1) == pytest.approx(1.0)
    assert measures.bipartition_concurrence(ket("000"), solo=1) == 0.0
    assert measures.bipartition_concurrence(GHZ, solo=1) == pytest.approx(1.0)


def test_three_tangle_examples():
    assert measures.three_tangle(1, 1, 0) == 0.0
    assert measures.three_tangle(1, 0, 0) == 1.0
    for p in (0.0, 0.3, 0.7, 1.0):
        assert measures.three_tangle(1, np.sqrt(1 - p), np.sqrt(p)) == pytest.approx(0.0, abs=1e-12)


def test_three_tangle_flags_violation():
    with pytest.raises(measures.MonogamyViolation):
        measures.three_tangle(1.0, 0.9, 0.9)
    assert measures.three_tangle(1.0, 1.0, 1e-6) == 0.0


def test_ghz_via_cnot_has_full_tangle():
    psi = channel.evolve(CNOT)
    assert np.allclose(psi, GHZ)
    s = measures.summarize(psi)
    assert s.C_AB == pytest.approx(0.0, abs=1e-12)
    assert s.C_EB == pytest.approx(0.0, abs=1e-12)
    assert s.tau_ABE == pytest.approx(1.0, abs=1e-12)
    assert s.F_AB == pytest.approx(0.5, abs=1e-12)


def test_hyperdeterminant_tangle_w_state_is_zero():
    w = (ket("001") + ket("010") + ket("100")) / np.sqrt(3)
    assert measures.hyperdeterminant_tangle(w) == pytest.approx(0.0, abs=1e-15)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_monogamy_for_any_three_qubit_state(seed):
    psi = random_state(np.random.default_rng(seed), 3)
    for solo in range(3):
        others = [k for k in range(3) if k != solo]
        c1 = measures.concurrence(partial_trace(projector(psi), keep=sorted([solo, others[0]])))
        c2 = measures.concurrence(partial_trace(projector(psi), keep=sorted([solo, others[1]])))
        cs = measures.bipartition_concurrence(psi, solo)
        assert abs(cs**2 - c1**2 - c2**2 - measures.hyperdeterminant_tangle(psi)) < 1e-7


def test_symmetric_singlet_fraction_examples():
    assert measures.symmetric_singlet_fraction(1.0, 0.0) == pytest.approx(1.0)
    assert measures.symmetric_singlet_fraction(0.0, 1.0) == pytest.approx(0.5)
    ghz_ab = 0.5 * (projector(ket("00")) + projector(ket("11")))
    assert measures.singlet_fraction(ghz_ab)[0] == pytest.approx(0.5)
    c = np.sqrt(0.5)
    v = measures.symmetric_singlet_fraction(c, 0.0)
    assert v == pytest.approx(0.7285533905932737, abs=1e-12)
    assert v == pytest.approx(measures.main_relation(c, c), abs=1e-12)


def test_symmetric_singlet_fraction_rejects_bad_radicand():
    with pytest.raises(ValueError):
        measures.symmetric_singlet_fraction(1.0, 0.5)


def test_summarize_agrees_with_density_route(cue_unitaries):
    for u in cue_unitaries[:40]:
        psi = channel.evolve(u)
        s = measures.summarize(psi)
        red = measures.reduced_pairs(psi)
        assert abs(s.C_AB - measures.concurrence(red["AB"])) < 1e-7
        assert abs(s.C_EB - measures.concurrence(red["EB"])) < 1e-7
        assert abs(s.C_AE - measures.concurrence(red["AE"])) < 1e-7
        assert s.monogamy_residual < 1e-9
        assert s.C_B_AE == pytest.approx(1.0, abs=1e-9)
