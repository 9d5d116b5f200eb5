"""Classical angular-momentum model of complete phase synchronization.

State is a real 3-vector ``(lx, ly, lz)``. The flow

    dlx/dt = 2 (ly^2 + lz^2),   dly/dt = -2 lx ly,   dlz/dt = -2 lx lz

conserves L^2 and drives the state to ``(L, 0, 0)``. The same flow is
reachable from the two-function "quasithermodynamic" form and from the
Hamiltonian-plus-jump-function form that is quantized into the Lindblad
model.

Note: the quasithermodynamic form with H = L^2 and S = lx, evaluated exactly
as written, gives one half of the flow above (a rescaling t -> 2t). This is
kept as is and asserted in the tests.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .numerics import integrate_rk4

FD_STEP = 1e-6

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0


class ClassicalState(NamedTuple):
    lx: float
    ly: float
    lz: float

    @property
    def l2(self):
        return self.lx**2 + self.ly**2 + self.lz**2


def _vec(s):
    v = np.asarray(s, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"classical state must have 3 components, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class OscillatorPair:
    z1: complex
    z2: complex

    @property
    def r1(self):
        return abs(self.z1)

    @property
    def r2(self):
        return abs(self.z2)

    @property
    def phi1(self):
        return _arg(self.z1)

    @property
    def phi2(self):
        return _arg(self.z2)


def _arg(z):
    if z == 0:
        raise ValueError("phase undefined for zero amplitude")
    phi = float(np.angle(z))
    return np.pi if phi == -np.pi else phi


@dataclass(frozen=True)
class StateFunction:
    """A scalar function of the classical state together with its gradient."""

    value: Callable[[np.ndarray], complex]
    gradient: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __call__(self, s):
        return self.value(_vec(s))

    def grad(self, s):
        return np.asarray(self.gradient(_vec(s)))

    @classmethod
    def from_function(cls, fn, name=""):
        """Wrap a plain function; the gradient uses central differences."""

        def gradient(l):
            g = np.zeros(3, dtype=complex)
            for m in range(3):
                e = np.zeros(3)
                e[m] = FD_STEP
                g[m] = (fn(l + e) - fn(l - e)) / (2 * FD_STEP)
            return g if np.any(g.imag) else g.real

        return cls(fn, gradient, name)


def l_squared():
    return StateFunction(lambda l: float(l @ l), lambda l: 2.0 * l, "L2")


def l_component(axis):
    k = "xyz".index(axis)
    unit = np.eye(3)[k]
    return StateFunction(lambda l: float(l[k]), lambda l: unit, f"l{axis}")


def zero_function():
    return StateFunction(lambda l: 0.0, lambda l: np.zeros(3), "0")


def jump_function():
    """R = lz - i ly, the classical jump function of the model."""
    grad = np.array([0.0, -1j, 1.0])
    return StateFunction(lambda l: l[2] - 1j * l[1], lambda l: grad, "lz-i*ly")


def rhs_eq1(s):
    lx, ly, lz = _vec(s)
    return np.array([2.0 * (ly * ly + lz * lz), -2.0 * lx * ly, -2.0 * lx * lz])


def rhs_quasithermo(H, S, s):
    """dl_i/dt = 1/2 eps_ikl dH/dl_k A_l,  A_l = 1/2 eps_lmn dS/dl_m dL2/dl_n."""
    l = _vec(s)
    dH = np.real_if_close(H.grad(l))
    dS = np.real_if_close(S.grad(l))
    dL2 = 2.0 * l
    A = 0.5 * np.einsum("lmn,m,n->l", _EPS, dS, dL2)
    return 0.5 * np.einsum("ikl,k,l->i", _EPS, dH, A)


def rhs_dissipative(H, Rs, s):
    """-(l x dH/dl) + sum_k [ i R_k (l x dR_k*/dl) + c.c. ]."""
    l = _vec(s)
    total = -np.cross(l, H.grad(l)).astype(complex)
    for R in Rs:
        r = complex(R(l))
        g = np.asarray(R.grad(l), dtype=complex)
        term = 1j * r * np.cross(l, np.conj(g))
        conj_term = -1j * np.conj(r) * np.cross(l, g)
        total = total + term + conj_term
    residue = float(np.max(np.abs(total.imag)))
    if residue > 1e-9:
        raise ValueError(f"dissipative flow has imaginary residue {residue:.3e}; "
                         "check the supplied gradients")
    return total.real


def schwinger_map(p):
    """Map two oscillator amplitudes onto (lx, ly, lz).

    ly is oriented so that lx = r1 r2 cos(phi1 - phi2) and
    ly = r1 r2 sin(phi1 - phi2), i.e. ly = i (z1* z2 - z1 z2*) / 2.
    """
    z1, z2 = complex(p.z1), complex(p.z2)
    lx = (np.conj(z1) * z2 + z1 * np.conj(z2)) / 2
    ly = 1j * (np.conj(z1) * z2 - z1 * np.conj(z2)) / 2
    lz = (abs(z1) ** 2 - abs(z2) ** 2) / 2
    comps = np.array([lx, ly, complex(lz)])
    assert np.max(np.abs(comps.imag)) <= 1e-14 * max(1.0, abs(z1) * abs(z2))
    return ClassicalState(*comps.real.tolist())


def phase_difference(s):
    """phi1 - phi2 in (-pi, pi], from lx = r1 r2 cos and ly = r1 r2 sin."""
    lx, ly, _ = _vec(s)
    if lx == 0.0 and ly == 0.0:
        raise ValueError("phase difference undefined: one oscillator has zero amplitude")
    phi = float(np.arctan2(ly, lx))
    return np.pi if phi == -np.pi else phi


def lx_closed_form(t, l0):
    """Analytic lx(t) = L tanh(2 L t + artanh(lx0 / L)) for |lx0| < L."""
    l0 = _vec(l0)
    L = float(np.sqrt(l0 @ l0))
    if abs(l0[0]) >= L:
        return np.full(np.shape(t), l0[0])
    return L * np.tanh(2.0 * L * np.asarray(t) + np.arctanh(l0[0] / L))


@dataclass(frozen=True)
class ClassicalTrajectory:
    t: np.ndarray
    states: np.ndarray          # (n, 3)
    l2: np.ndarray
    entropy: np.ndarray         # S = lx
    phase_diff: np.ndarray      # NaN where undefined

    def __len__(self):
        return len(self.t)


def integrate_classical(s0, t_end, dt, stride=1):
    if t_end <= 0 or dt <= 0:
        raise ValueError("t_end and dt must be positive")
    samples = integrate_rk4(rhs_eq1, _vec(s0), (0.0, t_end), dt, stride=stride)
    t = np.array([ts for ts, _ in samples])
    states = np.array([y for _, y in samples])
    phase = np.array([
        phase_difference(y) if (y[0] != 0.0 or y[1] != 0.0) else np.nan for y in states
    ])
    return ClassicalTrajectory(
        t=t,
        states=states,
        l2=np.sum(states**2, axis=1),
        entropy=states[:, 0].copy(),
        phase_diff=phase,
    )
