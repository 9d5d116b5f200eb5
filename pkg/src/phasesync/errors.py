"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """A computation failed for numerical rather than configuration reasons."""


class IntegrationError(NumericalError):
    def __init__(self, t, message="non-finite state encountered"):
        self.t = t
        super().__init__(f"{message} at t={t:.6g}")


class InvariantViolation(NumericalError):
    def __init__(self, t, invariant, value):
        self.t = t
        self.invariant = invariant
        self.value = value
        super().__init__(f"{invariant} violated at t={t:.6g} (measured {value:.3e})")


class NoStationaryStateError(NumericalError):
    pass


class DegenerateModelError(NumericalError):
    pass
