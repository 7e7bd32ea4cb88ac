"""Exception hierarchy."""


class GaussPeriodizeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(GaussPeriodizeError, ValueError):
    """An argument violates a documented precondition."""


class OrderCapExceeded(InvalidParameterError):
    """Requested harmonic order would underflow the coefficient tail."""

    def __init__(self, n_max, cap, tau_m):
        super().__init__(
            f"n_max={n_max} exceeds order cap {cap} for tau_m={tau_m!r}; "
            "higher coefficients underflow")
        self.n_max = n_max
        self.cap = cap
        self.tau_m = tau_m


class OutsideValidityInterval(InvalidParameterError):
    """Argument lies outside [-tau_m, tau_m]."""


class UnsatisfiableTarget(GaussPeriodizeError):
    """No truncation order reaches the requested accuracy.

    ``aliasing_floor`` is the error that remains for any order at this
    half-period; ``achievable`` is the smallest total budget reachable.
    """

    def __init__(self, epsilon, aliasing_floor, achievable, tau_m):
        super().__init__(
            f"epsilon={epsilon!r} is unreachable at tau_m={tau_m!r}: "
            f"aliasing floor is {aliasing_floor!r} "
            f"(best achievable total {achievable!r}); increase tau_m")
        self.epsilon = epsilon
        self.aliasing_floor = aliasing_floor
        self.achievable = achievable
        self.tau_m = tau_m


class QuadratureNotConverged(GaussPeriodizeError):
    """Panel doubling stopped before the tolerance was met."""

    def __init__(self, result):
        super().__init__(
            f"quadrature did not converge after {result.panels} panels "
            f"(last change {result.last_change!r}, "
            f"tolerance {result.rel_tol!r})")
        self.result = result
