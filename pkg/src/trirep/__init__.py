"""Tridiagonal representations of the Schroedinger wave operator in L2 bases.

Subpackages and modules
-----------------------
orthopoly
    Laguerre, Jacobi, Pollaczek and continuous dual Hahn polynomials.
tridiag
    Three-term recursions, spectra and Gauss rules of tridiagonal matrices.
models
    The solvable potentials with their bases, representations, spectra and
    expansion coefficients.
density
    Weight functions estimated from recursion coefficients.
oracle
    Brute-force quadrature and Numerov checks.
cli
    The ``trirep`` command.
"""

from .errors import (AccuracyError, BoundaryError, BracketError, DegenerateCouplingError, DomainError,
                     EmptySupportError, ParameterError, RangeError, TrirepError, WrongLevelError)
from .models import (CaseId, ModelCase, bound_spectrum, bound_state, expansion_coeffs, matrix_elements,
                     potential_eval, wavefunction_eval)
from .tridiag import TridiagonalRep, eigendecompose, forward_recursion, gauss_quadrature

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BoundaryError", "BracketError", "CaseId", "DegenerateCouplingError", "DomainError",
    "EmptySupportError", "ModelCase", "ParameterError", "RangeError", "TridiagonalRep", "TrirepError",
    "WrongLevelError", "bound_spectrum", "bound_state", "eigendecompose", "expansion_coeffs",
    "forward_recursion", "gauss_quadrature", "matrix_elements", "potential_eval", "wavefunction_eval",
]
