import numpy as np
import pytest

from phasesync.errors import DegenerateModelError, InvariantViolation, NoStationaryStateError
from phasesync.lindblad import (
    LindbladModel,
    as_density,
    dark_state,
    evolve,
    generator,
    liouvillian,
    spin_model,
    steady_states,
    unvec,
    vec,
)
from phasesync.numerics import hermitian_eigen, kernel
from phasesync.spin import build_spin

from conftest import random_density, random_hermitian


def proj(psi):
    return np.outer(psi, np.conj(psi))


def test_dark_state_is_stationary(model32, psi_st):
    assert np.max(np.abs(generator(model32, proj(psi_st)))) <= 1e-12


def test_generator_traceless_and_hermitian(rng, model32):
    for _ in range(100):
        out = generator(model32, random_density(rng, 4))
        assert abs(np.trace(out)) <= 1e-12
        assert np.max(np.abs(out - out.conj().T)) <= 1e-12


def test_generator_with_hamiltonian_is_traceless(rng):
    model = LindbladModel(random_hermitian(rng, 3), [rng.normal(size=(3, 3)) + 1j])
    out = generator(model, random_density(rng, 3))
    assert abs(np.trace(out)) <= 1e-12


def test_commuting_state_is_stationary(rep32):
    model = LindbladModel(rep32.lz)
    rho = np.zeros((4, 4))
    rho[0, 0] = 1
    assert np.array_equal(generator(model, rho), np.zeros((4, 4)))


def test_generator_equals_expanded_form(rng, model32):
    (R,) = model32.jumps
    RdR = R.conj().T @ R
    for _ in range(10):
        rho = random_density(rng, 4)
        expanded = 2 * R @ rho @ R.conj().T - RdR @ rho - rho @ RdR
        assert np.max(np.abs(generator(model32, rho) - expanded)) <= 1e-12


def test_generator_dimension_mismatch(model32):
    with pytest.raises(ValueError):
        generator(model32, np.eye(3) / 3)


def test_model_validation():
    with pytest.raises(ValueError):
        LindbladModel(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        LindbladModel(np.zeros((2, 2)), [np.zeros((3, 3))])


def test_liouvillian_matches_generator_on_matrix_units(rng):
    model = LindbladModel(random_hermitian(rng, 3), [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))])
    L = liouvillian(model)
    for a in range(3):
        for b in range(3):
            E = np.zeros((3, 3), dtype=complex)
            E[a, b] = 1
            assert np.max(np.abs(L @ vec(E) - vec(generator(model, E)))) <= 1e-12


def test_liouvillian_at_maximally_mixed(model32):
    rho = np.eye(4) / 4
    assert np.max(np.abs(unvec(liouvillian(model32) @ vec(rho), 4) - generator(model32, rho))) <= 1e-12


def test_liouvillian_kernel_dim_three_halves(model32):
    L = liouvillian(model32)
    assert L.shape == (16, 16)
    assert len(kernel(L)) == 1


def test_liouvillian_kernel_unitary_only(rep32):
    L = liouvillian(LindbladModel(rep32.lz))
    # brute force over matrix units: the stationary ones are exactly the diagonal units
    stationary = 0
    for a in range(4):
        for b in range(4):
            E = np.zeros((4, 4))
            E[a, b] = 1
            stationary += np.allclose(L @ vec(E), 0)
    assert stationary == 4
    assert len(kernel(L)) == 4


def test_dark_state_three_halves(model32, psi_st):
    (psi,) = dark_state(model32)
    assert np.max(np.abs(psi - psi_st)) <= 1e-10


def test_dark_state_half():
    (psi,) = dark_state(spin_model(0.5))
    assert np.max(np.abs(psi - np.array([1, 1]) / np.sqrt(2))) <= 1e-12


def test_dark_state_one():
    model = spin_model(1)
    (psi,) = dark_state(model)
    expected = np.array([1, np.sqrt(2), 1]) / 2
    assert np.max(np.abs(psi - expected)) <= 1e-12
    assert np.linalg.norm(model.jumps[0] @ expected) <= 1e-14


def test_dark_state_requires_zero_hamiltonian(rep32):
    with pytest.raises(ValueError, match="steady_states"):
        dark_state(LindbladModel(rep32.lz, [rep32.lz]))


@pytest.mark.parametrize("j", [0.5, 1, 1.5])
def test_dark_state_is_top_lx_eigenvector(j):
    rep = build_spin(j)
    (psi,) = dark_state(spin_model(j))
    assert np.vdot(psi, rep.lx @ psi).real == pytest.approx(j, abs=1e-12)
    top = hermitian_eigen(rep.lx).eigenvectors[:, -1]
    assert abs(np.vdot(psi, top)) ** 2 == pytest.approx(1, abs=1e-9)


def test_steady_state_three_halves(model32, psi_st):
    (rho,) = steady_states(model32)
    assert np.linalg.norm(rho - proj(psi_st)) <= 1e-8
    assert np.trace(rho @ rho).real == pytest.approx(1, abs=1e-9)


def test_steady_state_half():
    (rho,) = steady_states(spin_model(0.5))
    assert np.linalg.norm(rho - np.full((2, 2), 0.5)) <= 1e-8


def test_casimir_hamiltonian_changes_nothing(psi_st):
    (rho,) = steady_states(spin_model(1.5, hamiltonian="casimir"))
    assert np.linalg.norm(rho - proj(psi_st)) <= 1e-8


def test_steady_states_degenerate_model():
    with pytest.raises(DegenerateModelError, match="degenerate model"):
        steady_states(LindbladModel(np.zeros((2, 2)), [np.zeros((2, 2))]))


def test_steady_states_unattainable_tolerance(model32):
    with pytest.raises(NoStationaryStateError, match="no stationary state at tolerance"):
        steady_states(model32, tol=1e-30)


def test_evolve_from_maximally_mixed(model32, psi_st):
    traj = evolve(model32, np.eye(4) / 4, 10, 1e-3, reference=psi_st, stride=10)
    assert np.max(traj.trace_err) <= 1e-9
    for rho in traj.rhos:
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-10
        assert hermitian_eigen(0.5 * (rho + rho.conj().T)).eigenvalues[0] >= -1e-9
    assert traj.fidelity[-1] > 1 - 1e-6
    assert traj.purity[0] == pytest.approx(0.25)
    assert traj.purity[-1] == pytest.approx(1, abs=1e-6)
    assert traj.purity[-1] >= traj.purity[0]
    assert traj.exp_lx[-1] == pytest.approx(1.5, abs=1e-5)


def test_evolve_from_dark_state_is_constant(model32, psi_st):
    traj = evolve(model32, psi_st, 1, 1e-3, reference=psi_st)
    assert np.max(np.abs(traj.rhos - proj(psi_st))) <= 1e-12
    assert np.max(np.abs(traj.fidelity - 1)) <= 1e-10


def test_evolve_rejects_invalid_initial_state(model32):
    with pytest.raises(ValueError, match="density matrix"):
        evolve(model32, np.eye(4), 1, 1e-3)


def test_evolve_reports_invariant_violation(rep32):
    # bypass validation with a non-Hermitian H: the flow then leaves the Hermitian matrices
    model = LindbladModel(np.zeros((4, 4)), [rep32.lz])
    object.__setattr__(model, "H", 1j * rep32.lx)
    with pytest.raises(InvariantViolation) as info:
        evolve(model, np.diag([1.0, 0, 0, 0]), 1, 1e-2)
    assert info.value.invariant in {"unit trace", "hermiticity", "positivity"}
    assert info.value.t > 0


def test_as_density_from_vector(psi_st):
    assert np.allclose(as_density(psi_st), proj(psi_st))
