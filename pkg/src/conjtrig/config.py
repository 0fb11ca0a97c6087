"""Numerical tolerances used across the package.

Every threshold that decides a branch (root accepted, stability, normalization)
lives here so the CLI can echo the exact ledger it ran with.
"""

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Tolerances:
    # coefficient vectors
    normalization: float = 1e-9

    # rootfind
    root_residual: float = 1e-10      # |Q(c)| at an accepted root
    cluster_radius: float = 1e-6      # eigenvalues closer than this are one root
    boundary_guard: float = 1e-12     # |c| < 1 - guard counts as interior
    sign_probe: float = 1e-5          # step for the sign-change fallback
    newton_max_iter: int = 100

    # deflation
    deflation_root: float = 1e-8
    deflation_residual: float = 1e-7
    min_root_separation: float = 1e-8

    # closed forms
    fejer_guard: float = 1e-6

    # schur
    unit_circle_margin: float = 1e-10
    negligible_c: float = 1e-10
    bracket_cap: float = 1e8
    prescan_points: int = 64

    # chaos_sim
    divergence_bound: float = 1e6
    convergence_tol: float = 1e-9
    convergence_window: int = 50

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
