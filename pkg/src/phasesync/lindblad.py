"""Lindblad dynamics of the quantized model and its stationary states.

The generator is taken in the bracket form

    drho/dt = -i[H, rho] + sum_k ([R_k rho, R_k^+] + [R_k, rho R_k^+])

which expands to 2 R rho R^+ - {R^+ R, rho} per jump operator, i.e. twice
the usual dissipation rate. Relaxation times reported here are in these
units.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import DegenerateModelError, InvariantViolation, NoStationaryStateError
from .numerics import asymmetry, hermitian_eigen, integrate_rk4, kernel
from .spin import build_spin, jump_operator

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-9


@dataclass(frozen=True)
class LindbladModel:
    H: np.ndarray
    jumps: List[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        H = np.asarray(self.H, dtype=complex)
        n = H.shape[0]
        if H.shape != (n, n):
            raise ValueError(f"H must be square, got {H.shape}")
        if asymmetry(H) > 1e-12:
            raise ValueError("H must be Hermitian")
        jumps = [np.asarray(R, dtype=complex) for R in self.jumps]
        for R in jumps:
            if R.shape != (n, n):
                raise ValueError(f"jump operator shape {R.shape} does not match H {H.shape}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "jumps", jumps)

    @property
    def dim(self):
        return self.H.shape[0]


def spin_model(j, hamiltonian="zero"):
    """The quantized synchronization model at spin j: single jump lz - i ly.

    ``hamiltonian`` is ``"zero"`` (default) or ``"casimir"`` (H = L^2, which
    is proportional to the identity and leaves the dynamics unchanged).
    """
    rep = build_spin(j)
    if hamiltonian == "zero":
        H = np.zeros((rep.N, rep.N), dtype=complex)
    elif hamiltonian == "casimir":
        H = rep.casimir()
    else:
        raise ValueError(f"unknown hamiltonian {hamiltonian!r}")
    return LindbladModel(H, [jump_operator(rep)])


def density_problems(rho):
    """Return (name, measured) pairs for each violated density-matrix invariant."""
    problems = []
    asym = asymmetry(rho)
    if asym > HERMITIAN_TOL:
        problems.append(("hermiticity", asym))
        return problems
    tr_err = abs(np.trace(rho) - 1.0)
    if tr_err > TRACE_TOL:
        problems.append(("unit trace", tr_err))
    lo = hermitian_eigen(0.5 * (rho + rho.conj().T)).eigenvalues[0]
    if lo < POSITIVITY_TOL:
        problems.append(("positivity", lo))
    return problems


def as_density(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    problems = density_problems(rho)
    if problems:
        name, val = problems[0]
        raise ValueError(f"not a valid density matrix: {name} (measured {val:.3e})")
    return rho


def generator(model, rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != model.H.shape:
        raise ValueError(f"rho shape {rho.shape} does not match model dimension {model.dim}")
    H = model.H
    out = -1j * (H @ rho - rho @ H)
    for R in model.jumps:
        Rd = R.conj().T
        Rrho = R @ rho
        rhoRd = rho @ Rd
        out += (Rrho @ Rd - Rd @ Rrho) + (R @ rhoRd - rhoRd @ R)
    return out


def vec(rho):
    """Column-stacking vectorization."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, n):
    return np.asarray(v).reshape((n, n), order="F")


def liouvillian(model):
    """Matrix L with L @ vec(rho) == vec(generator(model, rho))."""
    n = model.dim
    eye = np.eye(n)
    H = model.H
    L = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for R in model.jumps:
        RdR = R.conj().T @ R
        L += 2.0 * np.kron(R.conj(), R) - np.kron(eye, RdR) - np.kron(RdR.T, eye)
    return L


def normalize_phase(psi):
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    psi = np.asarray(psi, dtype=complex)
    k = int(np.argmax(np.abs(psi) > 1e-12 * np.max(np.abs(psi))))
    return psi * (abs(psi[k]) / psi[k])


def dark_state(model, tol=1e-10):
    """Orthonormal basis of pure states annihilated by every jump operator."""
    if np.max(np.abs(model.H), initial=0.0) > 1e-12:
        raise ValueError("dark_state requires H = 0; use steady_states for models with a Hamiltonian")
    if not model.jumps:
        return [np.eye(model.dim, dtype=complex)[:, k] for k in range(model.dim)]
    stacked = np.vstack(model.jumps)
    return [normalize_phase(v) for v in kernel(stacked, tol)]


def steady_states(model, tol=1e-10):
    n = model.dim
    basis = kernel(liouvillian(model), tol)
    if not basis:
        raise NoStationaryStateError("no stationary state at tolerance")
    if len(basis) == n * n:
        raise DegenerateModelError("degenerate model: every state is stationary")
    states = []
    for v in basis:
        rho = unvec(v, n)
        rho = 0.5 * (rho + rho.conj().T)
        tr = np.trace(rho).real
        if tr <= 1e-12:
            rho = -rho
            tr = -tr
        if tr <= 1e-12:
            continue
        states.append(rho / tr)
    return states


@dataclass(frozen=True)
class QuantumTrajectory:
    t: np.ndarray
    rhos: np.ndarray            # (n, N, N)
    exp_lx: np.ndarray
    exp_ly: np.ndarray
    exp_lz: np.ndarray
    purity: np.ndarray
    trace_err: np.ndarray
    fidelity: Optional[np.ndarray]

    def __len__(self):
        return len(self.t)


def fidelity(rho, psi):
    """<psi|rho|psi> for a pure reference state."""
    return float(np.vdot(psi, rho @ psi).real)


def evolve(model, rho0, t_end, dt, reference=None, stride=1, check=True):
    """Integrate the master equation with fixed-step RK4.

    Every stored sample is checked against the density-matrix invariants
    (Hermiticity, unit trace, positivity) unless ``check`` is false.
    Expectation values use the spin-j matrices with N = 2j + 1.
    """
    if t_end <= 0 or dt <= 0:
        raise ValueError("t_end and dt must be positive")
    rho0 = as_density(rho0)
    if rho0.shape != model.H.shape:
        raise ValueError(f"rho0 shape {rho0.shape} does not match model dimension {model.dim}")
    samples = integrate_rk4(lambda r: generator(model, r), rho0, (0.0, t_end), dt, stride=stride)
    if check:
        for t, rho in samples:
            problems = density_problems(rho)
            if problems:
                raise InvariantViolation(t, *problems[0])

    rep = build_spin((model.dim - 1) / 2)
    t = np.array([s for s, _ in samples])
    rhos = np.array([r for _, r in samples])

    def expect(op):
        return np.einsum("ij,nji->n", op, rhos).real

    fid = None
    if reference is not None:
        ref = np.asarray(reference, dtype=complex)
        fid = np.einsum("i,nij,j->n", ref.conj(), rhos, ref).real
    return QuantumTrajectory(
        t=t,
        rhos=rhos,
        exp_lx=expect(rep.lx),
        exp_ly=expect(rep.ly),
        exp_lz=expect(rep.lz),
        purity=np.einsum("nij,nji->n", rhos, rhos).real,
        trace_err=np.abs(np.trace(rhos, axis1=1, axis2=2) - 1.0),
        fidelity=fid,
    )
