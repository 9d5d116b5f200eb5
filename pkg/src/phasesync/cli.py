"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import io
import json
import sys
from dataclasses import dataclass
from functools import wraps
from typing import Optional

import click
import numpy as np

from .analysis import concurrence, phase_decompose
from .classical import integrate_classical
from .errors import NumericalError
from .lindblad import dark_state, evolve, liouvillian, spin_model, steady_states
from .numerics import hermitian_eigen, kernel
from .spin import two_j, build_spin, phase_operator, polar_modulus

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
J_MAX = 8


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    j: float = 1.5
    t_end: float = 10.0
    dt: float = 1e-3
    initial: Optional[str] = None
    tol: float = 1e-10
    output: str = "-"
    format: Optional[str] = None
    stride: int = 10
    verify: bool = False
    hamiltonian: str = "zero"

    def validate(self):
        try:
            two_j(self.j)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not 0.5 <= self.j <= J_MAX:
            raise ConfigError(f"j must lie in [1/2, {J_MAX}], got {self.j}")
        if self.command in ("classical", "quantum"):
            if not (0 < self.dt < self.t_end):
                raise ConfigError(f"need 0 < dt < t_end, got dt={self.dt}, t_end={self.t_end}")
            if self.stride < 1:
                raise ConfigError("stride must be >= 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        return self


def _fmt6(x):
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _g12(x):
    return float(f"{x:.12g}")


def _cplx(z):
    z = complex(z)
    return [_g12(z.real) + 0.0, _g12(z.imag) + 0.0]


def _table(columns, rows, fmt):
    """Render rows of floats (None for undefined) as CSV or JSON text."""
    if fmt == "json":
        body = [[None if v is None or (isinstance(v, float) and np.isnan(v)) else
                 (v if isinstance(v, int) else _g12(v)) for v in row] for row in rows]
        return json.dumps({"columns": columns, "rows": body}, indent=1) + "\n"
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        cells = []
        for v in row:
            if v is None or (isinstance(v, float) and np.isnan(v)):
                cells.append("")
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(_fmt6(v))
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def _parse_table(text, fmt):
    if fmt == "json":
        data = json.loads(text)
        return data["columns"], [[np.nan if v is None else float(v) for v in r] for r in data["rows"]]
    lines = text.strip("\n").split("\n")
    columns = lines[0].split(",")
    rows = [[float(c) if c else np.nan for c in line.split(",")] for line in lines[1:]]
    return columns, rows


def _write(text, path):
    if path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --- runners -------------------------------------------------------------

def parse_vector(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise ConfigError(f"cannot parse initial state {text!r}") from None
    if len(parts) != 3 or not np.all(np.isfinite(parts)):
        raise ConfigError(f"classical initial state needs three finite components, got {text!r}")
    return np.array(parts)


def initial_density(selector, j, dark=None):
    n = int(round(2 * j)) + 1
    if selector in (None, "maximally-mixed"):
        return np.eye(n, dtype=complex) / n
    if selector == "dark":
        if dark is None:
            raise ConfigError("model has no unique dark state")
        return np.outer(dark, dark.conj())
    if selector.startswith("basis:"):
        try:
            k = int(selector.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad basis selector {selector!r}") from None
        if not 1 <= k <= n:
            raise ConfigError(f"basis index must be in 1..{n}, got {k}")
        rho = np.zeros((n, n), dtype=complex)
        rho[k - 1, k - 1] = 1.0
        return rho
    raise ConfigError(f"unknown initial state {selector!r}")


def run_classical(cfg):
    s0 = parse_vector(cfg.initial or "0,0.6,0.8")
    traj = integrate_classical(s0, cfg.t_end, cfg.dt, stride=cfg.stride)
    columns = ["t", "lx", "ly", "lz", "L2", "phase_diff", "S"]
    rows = [
        [t, *s, l2, phi, S]
        for t, s, l2, phi, S in zip(traj.t, traj.states.tolist(), traj.l2, traj.phase_diff, traj.entropy)
    ]
    return _table(columns, rows, cfg.format or "csv")


def _unique_dark(model, tol):
    if np.any(model.H):
        return None
    darks = dark_state(model, tol)
    return darks[0] if len(darks) == 1 else None


def run_quantum(cfg):
    model = spin_model(cfg.j, cfg.hamiltonian)
    dark = _unique_dark(spin_model(cfg.j), cfg.tol)
    rho0 = initial_density(cfg.initial, cfg.j, dark)
    traj = evolve(model, rho0, cfg.t_end, cfg.dt, reference=dark, stride=cfg.stride)
    fid = traj.fidelity if traj.fidelity is not None else [None] * len(traj)
    columns = ["t", "exp_lx", "exp_ly", "exp_lz", "purity", "trace_err", "fidelity_dark"]
    rows = [list(r) for r in zip(traj.t, traj.exp_lx, traj.exp_ly, traj.exp_lz,
                                 traj.purity, traj.trace_err, fid)]
    return _table(columns, rows, cfg.format or "csv")


def steady_report(j, tol):
    model = spin_model(j)
    n = model.dim
    kernel_dim = len(kernel(liouvillian(model), tol))
    steady_states(model, tol)
    darks = dark_state(model, tol)
    if not darks:
        raise NumericalError("no stationary state at tolerance")
    report = {
        "j": j,
        "N": n,
        "dark_states": [[_cplx(c) for c in psi] for psi in darks],
        "liouvillian_kernel_dim": kernel_dim,
    }
    psi = darks[0]
    if n == 4:
        report["concurrence"] = _g12(concurrence(psi))
    dec = phase_decompose(psi, phase_operator(build_spin(j)))
    report["phase_decomposition"] = [
        {"eigenvalue": _cplx(lam), "coefficient": _cplx(c), "weight": _g12(wt) + 0.0}
        for lam, c, wt in zip(dec.eigenvalues, dec.coefficients, dec.weights)
    ]
    report["w"] = _g12(dec.w)
    return report


def run_steady(cfg):
    if cfg.format not in (None, "json"):
        raise ConfigError("steady report is only available as JSON")
    return json.dumps(steady_report(cfg.j, cfg.tol), indent=1) + "\n"


def run_phase_op(cfg):
    if cfg.format not in (None, "json"):
        raise ConfigError("operator dump is only available as JSON")
    rep = build_spin(cfg.j)
    ph = phase_operator(rep)

    def mat(a):
        return [[_cplx(x) for x in row] for row in a]

    report = {
        "j": rep.j,
        "N": rep.N,
        "lplus": mat(rep.lplus),
        "polar_modulus": mat(polar_modulus(rep)),
        "U": mat(ph.U),
        "eigenvalues": [_cplx(l) for l in ph.eigenvalues],
        "eigenvectors": [[_cplx(x) for x in ph.eigenvectors[:, k]] for k in range(ph.N)],
    }
    return json.dumps(report, indent=1) + "\n"


def sweep_row(j, tol):
    rep = build_spin(j)
    model = spin_model(j)
    kdim = len(kernel(liouvillian(model), tol))
    darks = dark_state(model, tol)
    if not darks:
        raise NumericalError("no stationary state at tolerance")
    psi = darks[0]
    top = hermitian_eigen(rep.lx).eigenvectors[:, -1]
    overlap = abs(np.vdot(psi, top)) ** 2
    w = phase_decompose(psi, phase_operator(rep)).w
    return [float(j), rep.N, kdim, float(overlap), w]


def run_sweep(cfg):
    js = [k / 2 for k in range(1, int(round(2 * cfg.j)) + 1)]
    rows = [sweep_row(j, cfg.tol) for j in js]
    return _table(["j", "N", "kernel_dim", "top_lx_overlap", "w"], rows, cfg.format or "csv")


# --- verification of emitted output --------------------------------------

def verify_output(cfg, text):
    """Re-check producer invariants on emitted data; return a list of failures."""
    fails = []
    if cfg.command in ("classical", "quantum", "sweep"):
        columns, rows = _parse_table(text, cfg.format or "csv")
        data = {c: np.array([r[i] for r in rows]) for i, c in enumerate(columns)}
    if cfg.command == "classical":
        if np.max(np.abs(data["L2"] - data["L2"][0])) > 2e-6 * max(1.0, data["L2"][0]):
            fails.append("L2 not conserved")
        if np.any(np.diff(data["S"]) < -1e-6):
            fails.append("S decreased")
    elif cfg.command == "quantum":
        if np.max(data["trace_err"]) > 1e-6:
            fails.append("trace not preserved")
        n = int(round(2 * cfg.j)) + 1
        if np.any(data["purity"] > 1 + 1e-6) or np.any(data["purity"] < 1 / n - 1e-6):
            fails.append("purity out of range")
        fid = data["fidelity_dark"]
        if np.any(fid[~np.isnan(fid)] > 1 + 1e-6):
            fails.append("fidelity above 1")
    elif cfg.command == "sweep":
        if np.any(data["kernel_dim"] < 1):
            fails.append("empty Liouvillian kernel")
        if np.any(data["top_lx_overlap"] > 1 + 1e-6) or np.any(data["w"] > 1 + 1e-6):
            fails.append("overlap or weight above 1")
    elif cfg.command == "steady":
        rep = json.loads(text)
        for amps in rep["dark_states"]:
            psi = np.array([complex(*c) for c in amps])
            if abs(np.linalg.norm(psi) - 1) > 1e-9:
                fails.append("dark state not normalized")
        if abs(sum(d["weight"] for d in rep["phase_decomposition"]) - 1) > 1e-9:
            fails.append("phase weights do not sum to 1")
        if rep["liouvillian_kernel_dim"] < 1:
            fails.append("empty Liouvillian kernel")
    elif cfg.command == "phase-op":
        rep = json.loads(text)
        U = np.array([[complex(*x) for x in row] for row in rep["U"]])
        if np.max(np.abs(U.conj().T @ U - np.eye(rep["N"]))) > 1e-12:
            fails.append("U not unitary")
        lam = np.array([complex(*x) for x in rep["eigenvalues"]])
        if np.max(np.abs(lam ** rep["N"] - 1)) > 1e-9:
            fails.append("eigenvalue is not an N-th root of unity")
    return fails


RUNNERS = {
    "classical": run_classical,
    "quantum": run_quantum,
    "steady": run_steady,
    "phase-op": run_phase_op,
    "sweep": run_sweep,
}


def execute(cfg):
    """Run a config; return (exit_code, text, message)."""
    try:
        cfg.validate()
        text = RUNNERS[cfg.command](cfg)
    except ConfigError as exc:
        return EXIT_CONFIG, "", str(exc)
    except NumericalError as exc:
        return EXIT_NUMERICAL, "", str(exc)
    if cfg.verify:
        fails = verify_output(cfg, text)
        if fails:
            return EXIT_NUMERICAL, text, "verification failed: " + "; ".join(fails)
    return 0, text, ""


# --- click wiring --------------------------------------------------------

def _j_value(ctx, param, value):
    try:
        from fractions import Fraction
        return float(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"cannot parse {value!r}") from None


def common_options(fn):
    options = [
        click.option("--j", "j", default="3/2", callback=_j_value, show_default=True,
                     help="Spin quantum number (e.g. 3/2 or 1.5). For sweep, the largest j."),
        click.option("--t-end", type=float, default=10.0, show_default=True),
        click.option("--dt", type=float, default=1e-3, show_default=True),
        click.option("--tol", type=float, default=1e-10, show_default=True),
        click.option("--initial", default=None,
                     help="lx,ly,lz | maximally-mixed | dark | basis:k"),
        click.option("--output", "-o", default="-", show_default=True),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None),
        click.option("--stride", type=int, default=10, show_default=True),
        click.option("--verify", is_flag=True, help="Re-check invariants on the emitted data."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _command(name, extra=()):
    def decorate(fn):
        @common_options
        @wraps(fn)
        def wrapper(j, t_end, dt, tol, initial, output, fmt, stride, verify, **kw):
            cfg = RunConfig(command=name, j=j, t_end=t_end, dt=dt, initial=initial, tol=tol,
                            output=output, format=fmt, stride=stride, verify=verify, **kw)
            code, text, message = execute(cfg)
            if text:
                _write(text, cfg.output)
            if message:
                click.echo(f"error: {message}", err=True)
            sys.exit(code)

        for opt in extra:
            wrapper = opt(wrapper)
        return main.command(name)(wrapper)

    return decorate


@click.group()
def main():
    """Phase synchronization and its quantum counterpart."""


@_command("classical")
def classical_cmd():
    """Integrate the classical flow; CSV t,lx,ly,lz,L2,phase_diff,S."""


@_command("quantum", extra=[click.option(
    "--hamiltonian", type=click.Choice(["zero", "casimir"]), default="zero", show_default=True)])
def quantum_cmd():
    """Integrate the master equation; CSV t,exp_lx,...,fidelity_dark."""


@_command("steady")
def steady_cmd():
    """JSON report on the stationary state."""


@_command("phase-op")
def phase_op_cmd():
    """JSON dump of l+, sqrt(l+ l-), the phase operator and its eigenpairs."""


@_command("sweep")
def sweep_cmd():
    """Table over j = 1/2 .. j: kernel dimension, top-lx overlap, zero-phase weight."""


if __name__ == "__main__":
    main()
