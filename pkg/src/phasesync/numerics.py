"""Dense complex linear algebra and fixed-step integration.

Matrices and vectors are plain numpy arrays. The eigensolver and the null
space routine are Jacobi methods: cyclic two-sided rotations for Hermitian
matrices, and one-sided (Hestenes) rotations for kernels, so that the
eigenvalues of A^H A are obtained as squared column norms without ever
forming A^H A.
"""

from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import IntegrationError

HERMITIAN_TOL = 1e-10


class EigenResult(NamedTuple):
    """Ascending eigenvalues and the matching unit eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def pairs(self):
        return [(lam, self.eigenvectors[:, k]) for k, lam in enumerate(self.eigenvalues)]


def matmul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def asymmetry(a):
    """Max-norm distance between ``a`` and its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _rotation(app, aqq, apq):
    """2x2 unitary G such that G^H [[app, apq], [conj(apq), aqq]] G is diagonal."""
    mag = abs(apq)
    d = np.conj(apq) / mag
    zeta = (aqq - app) / (2.0 * mag)
    if abs(zeta) > 1e150:
        t = 0.5 / zeta
    else:
        t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * d, c * d]], dtype=complex)


def _sort_key(values):
    values = np.asarray(values, dtype=complex)
    return np.lexsort((values.imag, values.real))


def hermitian_eigen(a, max_sweeps=100):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns an :class:`EigenResult` with real eigenvalues in ascending order.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    asym = asymmetry(a)
    if asym > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return EigenResult(np.zeros(n), v)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                g = _rotation(a[p, p].real, a[q, q].real, apq)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenResult(values[order], v[:, order])


def _round_robin(n):
    """Tournament schedule: n - 1 rounds of disjoint column pairs (n even)."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        half = n // 2
        rounds.append((np.array(players[:half]), np.array(players[half:][::-1])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _one_sided_jacobi(a, max_sweeps=60):
    """Return (W, V) with W = A V having mutually orthogonal columns and V unitary.

    Each round rotates n/2 disjoint column pairs at once.
    """
    a = np.array(a, dtype=complex)
    m, n = a.shape
    size = n + (n % 2)
    w = np.zeros((m, size), dtype=complex)
    w[:, :n] = a
    v = np.eye(size, dtype=complex)
    rounds = _round_robin(size)
    # columns this small are numerically zero; rotating them only risks overflow
    floor = 1e-200 * float(np.linalg.norm(a)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for P, Q in rounds:
            wp, wq = w[:, P], w[:, Q]
            alpha = np.sum(np.abs(wp) ** 2, axis=0)
            beta = np.sum(np.abs(wq) ** 2, axis=0)
            gamma = np.sum(wp.conj() * wq, axis=0)
            mag = np.abs(gamma)
            active = (alpha > floor) & (beta > floor) & (mag > 1e-15 * np.sqrt(alpha * beta))
            if not np.any(active):
                continue
            rotated = True
            P, Q = P[active], Q[active]
            alpha, beta, gamma, mag = alpha[active], beta[active], gamma[active], mag[active]
            d = gamma.conj() / mag
            zeta = (beta - alpha) / (2.0 * mag)
            big = np.abs(zeta) > 1e150
            safe = np.where(big, 1.0, zeta)
            t = np.where(big, 0.5 / np.where(big, zeta, 1.0),
                         np.where(safe >= 0, 1.0, -1.0) / (np.abs(safe) + np.sqrt(1.0 + safe * safe)))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            for mat in (w, v):
                xp, xq = mat[:, P], mat[:, Q]
                mat[:, P] = c * xp - (s * d) * xq
                mat[:, Q] = s * xp + (c * d) * xq
        if not rotated:
            break
    return w[:, :n], v[:n, :n]


def kernel(a, tol=1e-10):
    """Orthonormal basis of the null space of ``a``, as a list of vectors.

    A vector belongs to the basis when it is an eigenvector of A^H A with
    eigenvalue below ``tol**2 * ||A||_F**2``. The zero matrix has the whole
    space as kernel. Rectangular input is accepted (the kernel is then a
    subspace of the column space dimension).
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[1]
    fro2 = float(np.linalg.norm(a) ** 2)
    if fro2 == 0.0:
        return [np.eye(n, dtype=complex)[:, k] for k in range(n)]
    w, v = _one_sided_jacobi(a)
    sigma2 = np.sum(np.abs(w) ** 2, axis=0)
    threshold = tol * tol * fro2
    return [v[:, k] / np.linalg.norm(v[:, k]) for k in range(n) if sigma2[k] < threshold]


def integrate_rk4(
    f: Callable[[np.ndarray], np.ndarray],
    y0,
    t_span: Sequence[float],
    dt: float,
    stride: int = 1,
):
    """Classical fixed-step fourth-order Runge-Kutta.

    ``f`` is autonomous, ``f(y) -> dy/dt``; ``y0`` may be any real or complex
    array. Returns a list of ``(t, y)`` samples holding every ``stride``-th
    step, always including both endpoints. The last step is shortened so the
    final sample lands exactly on ``t_span[1]``.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if dt <= 0:
        raise ValueError("dt must be positive")
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    if stride < 1:
        raise ValueError("stride must be >= 1")

    n = int(np.ceil((t1 - t0) / dt - 1e-9))
    times = t0 + dt * np.arange(n + 1)
    times[-1] = t1

    y = np.array(y0, dtype=np.result_type(np.asarray(y0), float))
    if not np.all(np.isfinite(y)):
        raise IntegrationError(t0)
    out = [(t0, y.copy())]
    for k in range(n):
        h = times[k + 1] - times[k]
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(times[k + 1])
        if (k + 1) % stride == 0 or k + 1 == n:
            out.append((float(times[k + 1]), y.copy()))
    return out
