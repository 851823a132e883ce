"""Exception types raised by the invsq package."""


class InvSqError(Exception):
    """Base class for all package errors."""


class DegenerateOrderError(InvSqError, ValueError):
    """Closed-form Hankel forms are singular at integer order (incl. sigma = 0)."""


class RegimeError(InvSqError, ValueError):
    """Argument lies outside the validity range of the requested evaluator."""


class ConvergenceError(InvSqError, RuntimeError):
    """An adaptive integrator failed to reach the requested tolerance."""


class CriticalBandError(InvSqError, ValueError):
    """alpha is too close to 1/4 for a closed-form consumer."""


class ScaleInvariantError(InvSqError, ValueError):
    """A short-range solution with a vanishing coefficient has no intrinsic length."""


class PoleError(InvSqError, ArithmeticError):
    """The analytic RG map hits a pole (Lambda -> infinity)."""

    def __init__(self, message, log_eps_pole=None):
        super().__init__(message)
        self.log_eps_pole = log_eps_pole


class WindowError(InvSqError, ValueError):
    """A sampled trajectory does not contain the requested feature."""


class ResonanceError(InvSqError, ArithmeticError):
    """Scattering formula evaluated at its pole."""


class ExpansionInvalidError(InvSqError, ValueError):
    """The small-X expansion is undefined for this input (e.g. R = 1)."""


class MatchingError(InvSqError, RuntimeError):
    """Ill-conditioned asymptotic matching in the ODE oracle."""


class SolverInconsistencyError(InvSqError, RuntimeError):
    """Flux bookkeeping disagrees with the boundary condition."""


class ConfigError(InvSqError, ValueError):
    """Invalid or contradictory run configuration."""
