"""Exception and warning classes raised across the package."""


class GUPError(Exception):
    """Base class for all package errors."""


class DomainError(GUPError, ValueError):
    """An argument lies outside the domain of the function."""


class ErfiOverflow(GUPError, OverflowError):
    """erfi(x) would overflow (or leave no headroom) in double precision."""


class NoConvergence(GUPError, RuntimeError):
    """An iterative procedure exhausted its iteration budget."""


class InvalidBracket(GUPError, ValueError):
    """The supplied bracket does not enclose a sign change."""


class NoBoundState(GUPError, ValueError):
    """The spectral condition has no real root for the given parameters."""


class EigenFailure(GUPError, RuntimeError):
    """The dense eigen-solve failed or the matrix is not admissible."""


class GridTooCoarse(GUPError, RuntimeError):
    """Doubling the quadrature grid moved the result beyond tolerance."""


class StepUnderflow(GUPError, RuntimeError):
    """The adaptive ODE integrator could not take a step."""


class AsymptoticRegimeWarning(UserWarning):
    """A large-mu expansion was evaluated outside its perturbative regime."""
