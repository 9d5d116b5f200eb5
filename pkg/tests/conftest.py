import numpy as np
import pytest

from phasesync.lindblad import spin_model
from phasesync.spin import build_spin, phase_operator

SQ3 = np.sqrt(3.0)
PSI_ST = np.array([1.0, SQ3, SQ3, 1.0]) / (2 * np.sqrt(2.0))


@pytest.fixture
def psi_st():
    return PSI_ST.astype(complex)


@pytest.fixture
def rep32():
    return build_spin(1.5)


@pytest.fixture
def model32():
    return spin_model(1.5)


@pytest.fixture
def phase4():
    return phase_operator(build_spin(1.5))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


def random_density(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def random_state(rng, n):
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / np.linalg.norm(psi)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
