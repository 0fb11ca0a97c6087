"""Schur stability margins of the family ``lambda^n + k (a_1 lambda^{n-1} + ... + a_n)``.

On the unit circle ``f(e^{it}) / (k e^{int}) = 1/k + C(t) - i S(t)``, so a root
reaches the circle exactly when ``S(t) = 0`` and ``k = -1 / C(t)``.  The
geometric margins read these crossing parameters off the zero set; the
bisection margins find the same edges from eigenvalue moduli alone.
"""

from dataclasses import dataclass
import math

import numpy as np

from .config import DEFAULT
from .rootfind import ZeroSet, zero_set
from .trigpoly import CoefficientVector

__all__ = [
    "StabilityMargins",
    "companion",
    "is_schur_stable",
    "crossing_parameters",
    "margins_geometric",
    "margins_bisection",
    "phi_max",
]


@dataclass(frozen=True)
class StabilityMargins:
    """Stable parameter interval ``(-k1, k2)`` and its length ``phi``."""

    k1: float
    k2: float
    method: str
    unbounded: bool = False

    def __post_init__(self):
        if self.method not in ("geometric", "bisection"):
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def phi(self):
        return self.k1 + self.k2

    def as_dict(self):
        return {"k1": self.k1, "k2": self.k2, "phi": self.phi,
                "method": self.method, "unbounded": self.unbounded}


def companion(coeffs, k):
    """Companion matrix of ``lambda^n + k a_1 lambda^{n-1} + ... + k a_n``."""
    a = coeffs.array if isinstance(coeffs, CoefficientVector) else np.asarray(coeffs, float)
    n = len(a)
    A = np.zeros((n, n))
    A[0, :] = -k * a
    A[1:, :-1] = np.eye(n - 1)
    return A


def is_schur_stable(coeffs, k, tol=DEFAULT):
    if not math.isfinite(k):
        raise ValueError("k must be finite")
    moduli = np.abs(np.linalg.eigvals(companion(coeffs, k)))
    return bool(moduli.max() < 1.0 - tol.unit_circle_margin)


def crossing_parameters(zs, tol=DEFAULT):
    """Values of ``k`` at which a root crosses the unit circle.

    Only zeros where ``S`` changes sign are crossings.  At a tangential zero
    the curve ``(C, -S)`` touches the axis without passing it, so a root
    meets the circle at that single ``k`` and returns inside.
    """
    return sorted(-1.0 / z.c_value for z in zs
                  if z.sign_change and abs(z.c_value) > tol.negligible_c)


def margins_geometric(coeffs, tol=DEFAULT):
    zs = coeffs if isinstance(coeffs, ZeroSet) else zero_set(coeffs, tol)
    ks = crossing_parameters(zs, tol)
    positive = [k for k in ks if k > 0]
    negative = [-k for k in ks if k < 0]
    # t = 0 always contributes C = 1, i.e. k = -1
    k1 = min(negative)
    if positive:
        return StabilityMargins(k1, min(positive), "geometric")
    return StabilityMargins(k1, math.inf, "geometric", unbounded=True)


def _edge(coeffs, sign, step_tol, tol):
    def stable(k):
        return is_schur_stable(coeffs, sign * k, tol)

    hi = 1.0
    while stable(hi):
        if hi >= tol.bracket_cap:
            return tol.bracket_cap, True
        hi *= 2.0
    # coarse scan so a narrow unstable window below hi is not skipped
    lo = 0.0
    for k in np.linspace(0.0, hi, tol.prescan_points + 1)[1:]:
        if not stable(k):
            hi = float(k)
            break
        lo = float(k)
    while hi - lo > step_tol:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), False


def margins_bisection(coeffs, tol=1e-9, tolerances=DEFAULT):
    """Margins from bracketing and bisecting the eigenvalue stability test."""
    if not 1e-12 <= tol <= 1e-3:
        raise ValueError(f"tol must lie in [1e-12, 1e-3], got {tol!r}")
    if not is_schur_stable(coeffs, 0.0, tolerances):
        raise RuntimeError("lambda^n reported unstable; eigenvalue routine is faulty")
    k2, unb2 = _edge(coeffs, +1.0, tol, tolerances)
    k1, unb1 = _edge(coeffs, -1.0, tol, tolerances)
    return StabilityMargins(k1, math.inf if unb2 else k2, "bisection",
                            unbounded=unb1 or unb2)


def phi_max(n):
    """Largest attainable interval length: ``1 / sin^2(pi / (2(n+1)))``."""
    if int(n) != n or n < 1:
        raise ValueError(f"degree must be a positive integer, got {n!r}")
    return 1.0 / math.sin(math.pi / (2 * (n + 1))) ** 2
