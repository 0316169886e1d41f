"""Exception hierarchy shared by all trirep modules."""


class TrirepError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(TrirepError, ValueError):
    """A model or polynomial parameter violates its admissible range."""


class BoundaryError(ParameterError):
    """Parameters sit exactly on a branch boundary of a closed-form solution."""


class DomainError(TrirepError, ValueError):
    """An evaluation point lies outside the function's domain or support."""


class RangeError(TrirepError, IndexError):
    """A level index lies outside the valid part of a spectrum."""


class DegenerateCouplingError(TrirepError, ArithmeticError):
    """An off-diagonal coupling b_n vanished during a forward recursion.

    This is the quantization condition of the tridiagonal representation,
    not a numerical failure; ``index`` holds the offending n.
    """

    def __init__(self, index, message=None):
        self.index = int(index)
        super().__init__(message or f"off-diagonal coupling b_{index} is zero")


class AccuracyError(TrirepError, RuntimeError):
    """Adaptive quadrature or refinement failed to reach its tolerance."""

    def __init__(self, message, estimate=float("nan"), error_bound=float("nan")):
        self.estimate = estimate
        self.error_bound = error_bound
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error_bound!r})")


class BracketError(TrirepError, RuntimeError):
    """An energy bracket does not contain the requested eigenvalue."""


class WrongLevelError(TrirepError, RuntimeError):
    """A shooting solution converged with the wrong number of nodes."""


class EmptySupportError(TrirepError, ValueError):
    """A density evaluation window contains none of the quadrature nodes."""
