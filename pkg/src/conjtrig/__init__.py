"""Conditional extremum of conjugate trigonometric polynomials and the Schur
stability margins it controls."""

__version__ = "0.1.0"

from .trigpoly import (CoefficientVector, GammaVector, eval_pair, epsilon_family,
                       fejer_closed_form, from_gamma, optimal_coeffs, optimal_gamma,
                       theorem_value, to_gamma)
from .rootfind import ZeroSet, rho, rho1, zero_set
from .deflation import c_at_double_roots, c_at_pi, c_at_root, deflate_once, deflate_twice
from .schur import StabilityMargins, is_schur_stable, margins_bisection, margins_geometric, phi_max
from .extremal import SearchReport, brute_force_sup, epsilon_convergence
from .chaos_sim import MapSpec, SimulationTrace, multiplier_interval, simulate
