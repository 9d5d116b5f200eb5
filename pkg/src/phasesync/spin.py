"""Spin-j representation matrices, the jump operator and the phase operator.

All matrices use the basis |j, m> ordered by descending m = j, j-1, ..., -j.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def two_j(j):
    """Return 2j as an int, rejecting anything that is not a positive half-integer."""
    twice = 2 * Fraction(j).limit_denominator(1000)
    if twice.denominator != 1 or twice <= 0 or abs(float(twice) - 2 * float(j)) > 1e-12:
        raise ValueError(f"j must be a positive half-integer, got {j!r}")
    return int(twice)


@dataclass(frozen=True)
class SpinRepresentation:
    j: float
    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray
    lplus: np.ndarray
    lminus: np.ndarray

    @property
    def N(self):
        return self.lz.shape[0]

    @property
    def m(self):
        return np.diag(self.lz).real

    def casimir(self):
        return self.lx @ self.lx + self.ly @ self.ly + self.lz @ self.lz


def build_spin(j):
    twice = two_j(j)
    j = twice / 2
    n = twice + 1
    i = np.arange(n - 1)
    # <m|l+|m-1> = sqrt((j-m+1)(j+m)) with m = j - i
    ladder = np.sqrt((i + 1.0) * (twice - i))
    lplus = np.diag(ladder, k=1).astype(complex)
    lminus = lplus.conj().T.copy()
    lz = np.diag(j - np.arange(n)).astype(complex)
    lx = (lplus + lminus) / 2
    ly = (lplus - lminus) / 2j
    return SpinRepresentation(j, lx, ly, lz, lplus, lminus)


def jump_operator(rep):
    """R = lz - i ly. Satisfies [lx, R] = R, so R raises along x."""
    return rep.lz - 1j * rep.ly


@dataclass(frozen=True)
class PhaseOperator:
    """The unitary exp(-i Phi) with its eigenpairs.

    Eigenpairs are ordered by phase angle 2 pi k / N, k = 0 .. N-1; each
    eigenvector has a real positive first component.
    """

    U: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    @property
    def N(self):
        return self.U.shape[0]

    def index_of(self, lam, tol=1e-9):
        d = np.abs(self.eigenvalues - lam)
        k = int(np.argmin(d))
        if d[k] > tol:
            raise KeyError(f"{lam} is not an eigenvalue of the phase operator")
        return k

    def eigenvector(self, lam):
        return self.eigenvectors[:, self.index_of(lam)]


def polar_modulus(rep):
    """sqrt(l+ l-), diagonal in the m basis."""
    return np.diag(np.sqrt(np.diag(rep.lplus @ rep.lminus).real)).astype(complex)


def phase_operator(rep):
    """Phase factor of the polar decomposition l+ = sqrt(l+ l-) exp(-i Phi).

    On the range of l+ the factor is the superdiagonal shift. l+ annihilates
    the top state and sqrt(l+ l-) vanishes on the bottom one, so the factor
    is fixed there by sending the top state to the bottom one with unit
    amplitude; this corner entry makes it unitary.
    """
    n = rep.N
    U = np.diag(np.ones(n - 1), k=1).astype(complex)
    U[n - 1, 0] = 1.0
    k = np.arange(n)
    lam = np.exp(2j * np.pi * k / n)
    # (U v)_i = v_{i+1} so v_i = lam^i / sqrt(N)
    vecs = np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    lam = _snap(lam)
    vecs = _snap(vecs)
    return PhaseOperator(U, lam, vecs)


def _snap(z, eps=1e-15):
    """Zero out rounding residue so roots of unity like i come out exact."""
    z = np.array(z, dtype=complex)
    re, im = z.real.copy(), z.imag.copy()
    re[np.abs(re) < eps] = 0.0
    im[np.abs(im) < eps] = 0.0
    return re + 1j * im
