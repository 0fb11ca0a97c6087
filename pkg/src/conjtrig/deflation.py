"""Factoring known zeros out of the sine polynomial.

If ``S(t0) = 0`` then ``S(t) = (cos t - cos t0) * sum_j a'_j sin(jt)`` with one
fewer coefficient.  Matching coefficients of ``sin(mt)`` gives

    a_1 = -cos(t0) a'_1 + a'_2 / 2
    a_m = a'_{m-1} / 2 - cos(t0) a'_m + a'_{m+1} / 2      (1 < m < n)
    a_n = a'_{n-1} / 2

Rows ``2..n`` are solved bottom-up; the first row is left over as a residual.
That residual equals ``Q(cos t0)``, so it certifies ``t0`` as a zero.
"""

from dataclasses import dataclass
import math

import numpy as np

from .config import DEFAULT
from .trigpoly import CoefficientVector, clenshaw

__all__ = [
    "DeflationError",
    "DeflatedForm",
    "DoublyDeflatedForm",
    "deflate_once",
    "deflate_twice",
    "c_at_root",
    "c_at_pi",
    "c_at_double_roots",
]


class DeflationError(ValueError):
    """The supplied angle is not a zero of the cosine part."""


def _alternating(x):
    # -x_1 + x_2 - x_3 + ...
    signs = np.where(np.arange(1, len(x) + 1) % 2 == 1, -1.0, 1.0)
    return float(np.dot(signs, x))


@dataclass(frozen=True)
class DeflatedForm:
    t0: float
    a_prime: tuple
    residual: float = 0.0

    @property
    def at_pi(self):
        return self.t0 == math.pi

    @property
    def array(self):
        return np.array(self.a_prime)

    def sine(self, t):
        _, S, _ = clenshaw(self.array, t)
        return (np.cos(t) - math.cos(self.t0)) * S

    def normalization_defect(self):
        """``(1 - cos t0) sum(a') - 1 - a'_1/2``; zero for a valid form."""
        ap = self.array
        return (1 - math.cos(self.t0)) * math.fsum(ap) - 1.0 - ap[0] / 2


@dataclass(frozen=True)
class DoublyDeflatedForm:
    t0: float
    t1: float
    a_dprime: tuple

    @property
    def array(self):
        return np.array(self.a_dprime)

    def _a12(self):
        ad = self.array
        return float(ad[0]), (float(ad[1]) if len(ad) > 1 else 0.0)

    def sine(self, t):
        _, S, _ = clenshaw(self.array, t)
        ct = np.cos(t)
        return (ct - math.cos(self.t0)) * (ct - math.cos(self.t1)) * S

    def normalization_defect(self):
        c0, c1 = math.cos(self.t0), math.cos(self.t1)
        a1, a2 = self._a12()
        lhs = (1 - c0) * (1 - c1) * math.fsum(self.a_dprime)
        lhs -= (1 - c0 - c1) * a1 / 2 + a2 / 4
        return lhs - 1.0


def _divide(a, c0, tol_residual):
    """Back-substitute the triangular system; return ``(a', residual)``."""
    n = len(a)
    ap = np.zeros(n + 1)  # ap[j] = a'_j for 1 <= j <= n-1; ap[n] is a zero pad
    ap[n - 1] = 2.0 * a[n - 1]
    for j in range(n - 2, 0, -1):
        # row m = j + 1 solved for a'_j
        ap[j] = 2.0 * (a[j] + c0 * ap[j + 1]) - ap[j + 2]
    residual = a[0] - (-c0 * ap[1] + ap[2] / 2.0)
    if abs(residual) > tol_residual:
        raise DeflationError(
            f"first-row residual {residual:.3e} exceeds {tol_residual:g}; "
            f"cos t0 = {c0!r} is not a root of the cosine part"
        )
    return ap[1:n], float(residual)


def _check_angle(t):
    t = float(t)
    if not (0.0 < t <= math.pi):
        raise ValueError(f"root angle must lie in (0, pi], got {t!r}")
    return t


def _deflate_array(a, t0, tol):
    a = np.asarray(a, dtype=float)
    if len(a) < 2:
        raise ValueError("deflation needs at least two coefficients")
    _, _, q = clenshaw(a, t0)
    if abs(q) > tol.deflation_root:
        raise DeflationError(f"|Q(cos t0)| = {abs(q):.3e} exceeds {tol.deflation_root:g}")
    return _divide(a, math.cos(t0), tol.deflation_residual)


def deflate_once(coeffs, t0, tol=DEFAULT):
    """Factor ``cos t - cos t0`` out of ``S``.

    ``t0 = pi`` is admitted only when ``Q(-1) = 0``; the returned form flags it
    through :attr:`DeflatedForm.at_pi`.
    """
    t0 = _check_angle(t0)
    a = coeffs.array if isinstance(coeffs, CoefficientVector) else coeffs
    ap, residual = _deflate_array(a, t0, tol)
    return DeflatedForm(t0, tuple(float(x) for x in ap), residual)


def deflate_twice(coeffs, t0, t1, tol=DEFAULT):
    t0, t1 = _check_angle(t0), _check_angle(t1)
    a = coeffs.array if isinstance(coeffs, CoefficientVector) else np.asarray(coeffs, float)
    if len(a) < 3:
        raise ValueError("double deflation needs n >= 3")
    if abs(t0 - t1) < tol.min_root_separation:
        raise DeflationError(f"roots {t0!r} and {t1!r} are not distinct")
    first = deflate_once(a, t0, tol)
    ad, _ = _deflate_array(first.array, t1, tol)
    return DoublyDeflatedForm(t0, t1, tuple(float(x) for x in ad))


def c_at_root(d):
    """``C(t0) = -a'_1 / 2``."""
    return -d.a_prime[0] / 2.0


def c_at_pi(d):
    """``C(pi) = -(1 + cos t0)(-a'_1 + a'_2 - ...) - a'_1 / 2``."""
    ap = d.array
    return -(1.0 + math.cos(d.t0)) * _alternating(ap) - d.a_prime[0] / 2.0


def c_at_double_roots(d):
    """``(C(t0), C(t1))`` from the doubly reduced coefficients.

    When the two values coincide, ``a''_1`` vanishes and both equal ``-a''_2/4``.
    """
    a1, a2 = d._a12()
    return (float(-a2 / 4.0 + a1 / 2.0 * math.cos(d.t1)),
            float(-a2 / 4.0 + a1 / 2.0 * math.cos(d.t0)))
