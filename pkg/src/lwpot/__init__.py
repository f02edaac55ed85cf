"""Exact solutions, spectra and numerical cross-checks for two Lambert-W potentials."""
from .closedform import (
    SignPair,
    SolutionCoefficients,
    bound_state_psi,
    general_solution_psi,
    zero_energy_psi,
)
from .errors import (
    ConvergenceError,
    DomainError,
    LWPotError,
    ParameterError,
    SingularityError,
    VerificationError,
)
from .potential import FIGURE1, FIGURE2, PhysicalParams, PotentialKind, eval_potential, map_z
from .spectrum import ScanPolicy, find_bound_states, spectrum_function

__all__ = [
    "FIGURE1",
    "FIGURE2",
    "ConvergenceError",
    "DomainError",
    "LWPotError",
    "ParameterError",
    "PhysicalParams",
    "PotentialKind",
    "ScanPolicy",
    "SignPair",
    "SingularityError",
    "SolutionCoefficients",
    "VerificationError",
    "bound_state_psi",
    "eval_potential",
    "find_bound_states",
    "general_solution_psi",
    "map_z",
    "spectrum_function",
    "zero_energy_psi",
]
