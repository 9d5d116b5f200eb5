"""Entanglement and phase content of pure states."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lindblad import normalize_phase

NORM_TOL = 1e-9


def _unit(psi, dim=None):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"expected a state vector, got shape {psi.shape}")
    if dim is not None and psi.shape[0] != dim:
        raise ValueError(f"expected a {dim}-component state, got {psi.shape[0]}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {np.linalg.norm(psi):.12g})")
    return psi


def concurrence(psi):
    """Two-qubit pure-state concurrence 2|psi1 psi4 - psi2 psi3|.

    The first qubit is the row index of the 2x2 reshape, so this is twice
    the modulus of its determinant.
    """
    psi = _unit(psi, 4)
    return float(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]))


def is_product(psi, tol=1e-10):
    """Return ``(True, (first, second))`` if psi factorizes, else ``(False, None)``."""
    psi = _unit(psi, 4)
    if concurrence(psi) > tol:
        return False, None
    M = psi.reshape(2, 2)
    row = M[int(np.argmax(np.linalg.norm(M, axis=1)))]
    second = normalize_phase(row / np.linalg.norm(row))
    first = M @ second.conj()
    return True, (first, second)


@dataclass(frozen=True)
class PhaseDecomposition:
    eigenvalues: np.ndarray
    coefficients: np.ndarray
    weights: np.ndarray
    a: complex
    z: Optional[complex]
    w: float

    def coefficient(self, lam, tol=1e-9):
        d = np.abs(self.eigenvalues - lam)
        k = int(np.argmin(d))
        if d[k] > tol:
            raise KeyError(f"{lam} is not a phase eigenvalue")
        return self.coefficients[k]

    def as_dict(self):
        return {complex(l): complex(c) for l, c in zip(self.eigenvalues, self.coefficients)}


def phase_decompose(psi, ph):
    """Expand psi over the eigenvectors of the phase operator.

    ``a`` is the coefficient on the zero-phase eigenvector, ``z`` the one on
    eigenvalue i (``None`` when i is not an N-th root of unity), ``w`` the
    relative weight of the zero-phase component.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (ph.N,):
        raise ValueError(f"state of dimension {psi.shape} does not match phase operator N={ph.N}")
    coeffs = ph.eigenvectors.conj().T @ psi
    weights = np.abs(coeffs) ** 2
    a = coeffs[ph.index_of(1.0)]
    z = coeffs[ph.index_of(1j)] if ph.N % 4 == 0 else None
    return PhaseDecomposition(
        eigenvalues=ph.eigenvalues.copy(),
        coefficients=coeffs,
        weights=weights,
        a=complex(a),
        z=None if z is None else complex(z),
        w=float(weights[ph.index_of(1.0)] / weights.sum()),
    )


def conjugate_pair_check(d, tol=1e-12):
    """True iff c(conj(lam)) == conj(c(lam)) for every eigenvalue lam.

    For N = 4 this says c(-i) = conj(c(i)) and c(1), c(-1) are real, which
    holds for real-amplitude states. Normalize the global phase first.
    """
    for lam, c in zip(d.eigenvalues, d.coefficients):
        if abs(d.coefficient(np.conj(lam)) - np.conj(c)) > tol:
            return False
    return True
