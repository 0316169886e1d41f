"""The thirteen solvable (potential, basis case) systems.

Twelve case ids are defined; the Hulthen case 1 minus branch (selected with
``sign_choice="minus"``) is the thirteenth system.
"""

from .api import (basis_eval, basis_spec, bound_spectrum, bound_state, effective_potential,
                  expansion_coeffs, matrix_elements, potential_eval, wavefunction_eval)
from .base import (BasisSpec, CaseId, Coordinate, ExpansionResult, ModelCase, SpectrumResult,
                   basis_values)
from .hulthen import hulthen1_recursion, hulthen2_polynomial_rep, jacobi_rescaling
from .registry import schema

__all__ = [
    "BasisSpec", "CaseId", "Coordinate", "ExpansionResult", "ModelCase", "SpectrumResult",
    "basis_eval", "basis_spec", "basis_values", "bound_spectrum", "bound_state",
    "effective_potential", "expansion_coeffs", "hulthen1_recursion", "hulthen2_polynomial_rep",
    "jacobi_rescaling", "matrix_elements", "potential_eval", "schema", "wavefunction_eval",
]
