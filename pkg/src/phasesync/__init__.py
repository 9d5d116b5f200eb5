"""Complete phase synchronization in a classical angular-momentum model and
the entangled stationary state of its Lindblad counterpart."""

from .analysis import PhaseDecomposition, concurrence, conjugate_pair_check, is_product, phase_decompose
from .classical import (
    ClassicalState,
    OscillatorPair,
    StateFunction,
    integrate_classical,
    phase_difference,
    rhs_dissipative,
    rhs_eq1,
    rhs_quasithermo,
    schwinger_map,
)
from .errors import (
    DegenerateModelError,
    IntegrationError,
    InvariantViolation,
    NoStationaryStateError,
    NumericalError,
)
from .lindblad import (
    LindbladModel,
    dark_state,
    evolve,
    generator,
    liouvillian,
    spin_model,
    steady_states,
)
from .numerics import EigenResult, hermitian_eigen, integrate_rk4, kernel, matmul
from .spin import PhaseOperator, SpinRepresentation, build_spin, jump_operator, phase_operator

__version__ = "0.1.0"
