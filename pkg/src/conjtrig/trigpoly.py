"""Conjugate trigonometric polynomial pairs.

For coefficients ``a_1..a_n`` the pair is

    C(t) = sum_j a_j cos(j t),    S(t) = sum_j a_j sin(j t),

the real and imaginary parts of ``sum_j a_j exp(i j t)``.  ``S`` always has the
factor ``sin t``; the remaining cosine part is

    Q(cos t) = S(t) / sin t = g_1 + 2 g_2 cos t + ... + 2 g_n cos((n-1) t)

where ``g_j = a_j + a_{j+2} + a_{j+4} + ...`` (the gamma coordinates).
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .config import DEFAULT

__all__ = [
    "CoefficientVector",
    "GammaVector",
    "EvaluationGrid",
    "NormalizationError",
    "SingularPointError",
    "clenshaw",
    "eval_pair",
    "cosine_part",
    "cosine_part_chebyshev",
    "to_gamma",
    "from_gamma",
    "optimal_coeffs",
    "optimal_gamma",
    "fejer_closed_form",
    "epsilon_family",
    "theorem_value",
    "evaluate_grid",
]


class NormalizationError(ValueError):
    """Coefficients violate the sum-to-one condition."""


class SingularPointError(ValueError):
    """Closed form evaluated inside the guard band of its removable singularity."""


def _as_tuple(values):
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("coefficient sequence must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    return tuple(float(x) for x in arr)


@dataclass(frozen=True)
class CoefficientVector:
    """Normalized coefficients ``(a_1, ..., a_n)`` with ``sum(a) == 1``."""

    a: tuple
    tol: float = field(default=DEFAULT.normalization, compare=False, repr=False)

    def __post_init__(self):
        a = _as_tuple(self.a)
        object.__setattr__(self, "a", a)
        total = math.fsum(a)
        if abs(total - 1.0) > self.tol:
            raise NormalizationError(
                f"coefficients sum to {total!r}, expected 1 within {self.tol:g}"
            )

    @property
    def n(self):
        return len(self.a)

    @property
    def array(self):
        return np.array(self.a)

    def __len__(self):
        return len(self.a)


@dataclass(frozen=True)
class GammaVector:
    """Image of a coefficient vector under ``g_j = a_j + a_{j+2} + ...``.

    For ``n == 1`` the second coordinate is read as zero.
    """

    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", _as_tuple(self.gamma))

    @property
    def n(self):
        return len(self.gamma)

    @property
    def array(self):
        return np.array(self.gamma)

    @property
    def g1(self):
        return self.gamma[0]

    @property
    def g2(self):
        return self.gamma[1] if self.n > 1 else 0.0


@dataclass(frozen=True)
class EvaluationGrid:
    points: np.ndarray
    values_C: np.ndarray
    values_S: np.ndarray

    def __post_init__(self):
        if not (len(self.points) == len(self.values_C) == len(self.values_S)):
            raise ValueError("grid arrays must have equal length")
        if np.any(np.diff(self.points) <= 0):
            raise ValueError("grid points must be strictly increasing")


def clenshaw(a, t):
    """Backward recurrence for ``sum a_j cos(jt)`` and ``sum a_j sin(jt)``.

    Returns ``(C, S, b1)`` where ``b1 = S / sin t`` is the cosine part, valid
    even where ``sin t == 0``.  ``t`` may be a scalar or an array.
    """
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    c = np.cos(t)
    two_c = 2.0 * c
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for coef in a[::-1]:
        b1, b2 = coef + two_c * b1 - b2, b1
    return b1 * c - b2, b1 * np.sin(t), b1


def _coeff_array(coeffs):
    if isinstance(coeffs, CoefficientVector):
        return coeffs.array
    return np.asarray(coeffs, dtype=float)


def eval_pair(coeffs, t):
    """Return ``(C(t), S(t))``; scalars in, floats out."""
    # fold into [-pi, pi]; identity on that interval
    t_arr = np.asarray(t, dtype=float)
    t_red = t_arr - 2 * np.pi * np.round(t_arr / (2 * np.pi))
    C, S, _ = clenshaw(_coeff_array(coeffs), t_red)
    if np.ndim(t) == 0:
        return float(C), float(S)
    return C, S


def cosine_part(coeffs, t):
    """``Q(cos t) = S(t) / sin t``, finite at ``t = 0`` and ``t = pi``."""
    _, _, q = clenshaw(_coeff_array(coeffs), t)
    return float(q) if np.ndim(t) == 0 else q


def cosine_part_chebyshev(coeffs):
    """Chebyshev-T series of ``Q`` in ``c = cos t``: ``[g_1, 2 g_2, ..., 2 g_n]``."""
    g = _gamma_array(_coeff_array(coeffs))
    series = 2.0 * g
    series[0] = g[0]
    return series


def _gamma_array(a):
    # suffix sums over every other index
    g = np.array(a, dtype=float)
    for j in range(len(g) - 3, -1, -1):
        g[j] += g[j + 2]
    return g


def to_gamma(coeffs):
    return GammaVector(tuple(_gamma_array(_coeff_array(coeffs))))


def from_gamma(gamma, tol=DEFAULT.normalization):
    g = gamma.array if isinstance(gamma, GammaVector) else np.asarray(gamma, float)
    g2 = g[1] if len(g) > 1 else 0.0
    if abs(g[0] + g2 - 1.0) > tol:
        raise NormalizationError(f"g1 + g2 = {g[0] + g2!r}, expected 1")
    padded = np.concatenate([g, [0.0, 0.0]])
    return CoefficientVector(tuple(padded[:-2] - padded[2:]), tol=tol)


def _check_degree(n):
    if int(n) != n or n < 1:
        raise ValueError(f"degree must be a positive integer, got {n!r}")
    return int(n)


def optimal_coeffs(n):
    """Coefficients maximizing the conditional minimum of ``C`` over zeros of ``S``.

    ``a_j = 2 tan(pi / (2(n+1))) (1 - j/(n+1)) sin(pi j / (n+1))``
    """
    n = _check_degree(n)
    if n == 1:
        # tan(pi/4) rounds to 1 - 2**-53
        return CoefficientVector((1.0,))
    N = n + 1
    j = np.arange(1, N)
    a = 2.0 * math.tan(math.pi / (2 * N)) * (1.0 - j / N) * np.sin(math.pi * j / N)
    return CoefficientVector(tuple(a))


def optimal_gamma(n):
    """Gamma coordinates of :func:`optimal_coeffs` from their own closed form."""
    n = _check_degree(n)
    N = n + 1
    theta = math.pi / N
    j = np.arange(1, N)
    num = (n - j + 3) * np.sin(theta * j) - (n - j + 1) * np.sin(theta * (j - 2))
    g = num / (2 * N * math.sin(theta) * (1 + math.cos(theta)))
    return GammaVector(tuple(g))


def fejer_closed_form(n, t, guard=DEFAULT.fejer_guard):
    """``S0(t) / sin t`` for the optimal coefficients, as a squared-cosine ratio.

    The ratio has a removable singularity at ``t = pi/(n+1)``; within ``guard``
    radians of it a :class:`SingularPointError` is raised.
    """
    n = _check_degree(n)
    N = n + 1
    theta = math.pi / N
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr <= 0) | (t_arr >= math.pi)):
        raise ValueError("t must lie in the open interval (0, pi)")
    if n == 1:
        # cos^2 t / cos^2 t: the singularity cancels identically
        return 1.0 if np.ndim(t) == 0 else np.ones_like(t_arr)
    if np.any(np.abs(t_arr - theta) < guard):
        raise SingularPointError(f"t within {guard:g} of pi/{N}")
    ct = math.cos(theta)
    out = (1 - ct) / N * 2 * np.cos(N * t_arr / 2) ** 2 / (np.cos(t_arr) - ct) ** 2
    return float(out) if np.ndim(t) == 0 else out


def epsilon_family(n, eps):
    """Optimal coefficients blended with ``sin t`` so that ``S > 0`` on ``(0, pi)``."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    a = optimal_coeffs(n).array / (1.0 + eps)
    a[0] += eps / (1.0 + eps)
    return CoefficientVector(tuple(a))


def theorem_value(n):
    """Supremum of the conditional minimum: ``-tan^2(pi / (2(n+1)))``."""
    n = _check_degree(n)
    if n == 1:
        return -1.0
    return -math.tan(math.pi / (2 * (n + 1))) ** 2


def evaluate_grid(coeffs, points):
    points = np.asarray(points, dtype=float)
    C, S, _ = clenshaw(_coeff_array(coeffs), points)
    return EvaluationGrid(points, C, S)
