import numpy as np
import pytest

from envchannel.sampling import SeedSpec, haar_unitary


def random_state(rng, n_qubits):
    v = rng.standard_normal(2**n_qubits) + 1j * rng.standard_normal(2**n_qubits)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    x = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_local_unitary(rng):
    return np.kron(haar_unitary(2, rng), haar_unitary(2, rng))


def werner(w):
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return w * np.outer(phi, phi) + (1 - w) * np.eye(4) / 4


@pytest.fixture
def rng():
    return np.random.default_rng(20011)


@pytest.fixture(scope="session")
def cue_unitaries():
    return [haar_unitary(4, SeedSpec(7, i)) for i in range(200)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
