"""Lattice path sums for the 1+1D Dirac electron and their continuum limit.

Exact path counts, finite-N bend-amplitude sums, Bessel closed forms of the
limiting spinor components, and finite-difference checks that the assembled
spinors solve the Dirac equation.
"""
from .closedform import (
    bessel_j0,
    bessel_j1,
    j1_over_z,
    kinematics,
    psi_component,
    spinor_field,
    spinor_solutions,
)
from .combinatorics import (
    DirectionPair,
    LatticeEndpoint,
    LatticePath,
    bend_positions,
    count_paths,
    enumerate_paths,
)
from .dirac import GridSpec, dirac_residual, independence_check, residual_convergence
from .errors import ChessboardError, DomainError, OracleScaleExceeded
from .kernels import BACKEND
from .pathsum import SumSpec, convergence_scan, modified_sum, oracle_sum, original_sum

__all__ = [
    "BACKEND", "ChessboardError", "DirectionPair", "DomainError", "GridSpec",
    "LatticeEndpoint", "LatticePath", "OracleScaleExceeded", "SumSpec",
    "bend_positions", "bessel_j0", "bessel_j1", "convergence_scan", "count_paths",
    "dirac_residual", "enumerate_paths", "independence_check", "j1_over_z",
    "kinematics", "modified_sum", "oracle_sum", "original_sum", "psi_component",
    "residual_convergence", "spinor_field", "spinor_solutions",
]
