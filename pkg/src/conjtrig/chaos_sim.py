"""Stabilizing an unstable fixed point of a 1-D map by predictive averaging.

The controlled iteration feeds the map a weighted average of the last ``n``
states,

    x_{k+1} = f(a_1 x_k + a_2 x_{k-1} + ... + a_n x_{k-n+1}),

which leaves every fixed point of ``f`` in place (the weights sum to one).
Around a fixed point with multiplier ``mu = f'(x*)`` the deviations obey
``e_{k+1} = mu * sum_j a_j e_{k+1-j}``, whose characteristic polynomial is
``lambda^n + k (a_1 lambda^{n-1} + ... + a_n)`` with ``k = -mu``.  The fixed
point is therefore locally stable exactly for ``mu`` in ``(-k2, k1)``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .config import DEFAULT
from .schur import margins_geometric
from .trigpoly import CoefficientVector

__all__ = [
    "MapSpec",
    "SimulationTrace",
    "SimulationDiverged",
    "simulate",
    "multiplier_interval",
    "linearization",
    "closed_loop_polynomial",
    "spectral_radius",
]

FD_STEP = 1e-6


class SimulationDiverged(OverflowError):
    def __init__(self, step, states):
        super().__init__(f"iterate left the bounded region at step {step}")
        self.step = step
        self.states = states


@dataclass(frozen=True)
class MapSpec:
    """A polynomial map with a designated fixed point.

    ``poly`` holds coefficients highest degree first, as for ``numpy.polyval``.
    """

    kind: str
    params: tuple
    poly: tuple
    fixed_point: float
    multiplier: float = field(init=False)

    def __post_init__(self):
        if self.kind not in ("logistic", "cubic", "custom-polynomial"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        x = self.fixed_point
        if abs(self(x) - x) > 1e-10:
            raise ValueError(f"{x!r} is not a fixed point: f(x) - x = {self(x) - x:.3e}")
        mu = float(np.polyval(np.polyder(self.poly), x))
        fd = (self(x + FD_STEP) - self(x - FD_STEP)) / (2 * FD_STEP)
        if abs(fd - mu) > 1e-8 * max(1.0, abs(mu)):
            raise ValueError("analytic and finite-difference multipliers disagree")
        object.__setattr__(self, "multiplier", mu)

    def __call__(self, x):
        return float(np.polyval(self.poly, x))

    @classmethod
    def logistic(cls, r):
        """``r x (1 - x)``; fixed point ``1 - 1/r`` with multiplier ``2 - r``."""
        if r <= 1:
            raise ValueError("logistic map needs r > 1 for a nontrivial fixed point")
        return cls("logistic", (float(r),), (-r, r, 0.0), 1.0 - 1.0 / r)

    @classmethod
    def cubic(cls, r):
        """``r x (1 - x^2)``; fixed point ``sqrt(1 - 1/r)`` with multiplier ``3 - 2r``."""
        if r <= 1:
            raise ValueError("cubic map needs r > 1 for a nontrivial fixed point")
        return cls("cubic", (float(r),), (-r, 0.0, r, 0.0), math.sqrt(1.0 - 1.0 / r))

    @classmethod
    def polynomial(cls, poly, fixed_point):
        poly = tuple(float(c) for c in poly)
        return cls("custom-polynomial", poly, poly, float(fixed_point))

    @classmethod
    def with_multiplier(cls, mu):
        """Logistic map tuned so its nontrivial fixed point has multiplier ``mu``."""
        return cls.logistic(2.0 - mu)


@dataclass(frozen=True)
class SimulationTrace:
    states: tuple
    converged: bool
    final_error: float
    horizon_n: int
    coeffs: CoefficientVector
    fixed_point: float

    def errors(self):
        return np.abs(np.array(self.states) - self.fixed_point)

    def as_dict(self, include_states=False):
        out = {
            "converged": self.converged,
            "final_error": self.final_error,
            "horizon_n": self.horizon_n,
            "coeffs": list(self.coeffs.a),
            "fixed_point": self.fixed_point,
            "steps": len(self.states) - 1,
        }
        if include_states:
            out["states"] = list(self.states)
        return out


def _converged(errors, tol):
    window = tol.convergence_window
    if errors[-1] > tol.convergence_tol or len(errors) < window:
        return False
    tail = errors[-window:]
    if tail.max() <= tol.convergence_tol:
        return True
    half = window // 2
    # envelope over the window must not grow
    return tail[half:].max() <= tail[:half].max()


def simulate(map_spec, coeffs, x_init, steps, tol=DEFAULT):
    """Run the averaged iteration until ``x_steps``.

    ``x_init`` is the history ``x_0..x_{n-1}``, oldest first.  Raises
    :class:`SimulationDiverged` once ``|x|`` exceeds the divergence bound.
    """
    a = coeffs.array
    n = len(a)
    hist = [float(x) for x in np.atleast_1d(np.asarray(x_init, dtype=float))]
    if len(hist) != n:
        raise ValueError(f"initial history must have length n = {n}, got {len(hist)}")
    if steps < n:
        raise ValueError(f"steps must be at least n = {n}")
    weights = a[::-1]  # aligned with the oldest-first history window
    states = list(hist)
    for k in range(n, steps + 1):
        x = map_spec(float(np.dot(weights, states[-n:])))
        if not math.isfinite(x) or abs(x) > tol.divergence_bound:
            raise SimulationDiverged(k, tuple(states))
        states.append(x)
    errors = np.abs(np.array(states) - map_spec.fixed_point)
    return SimulationTrace(tuple(states), bool(_converged(errors, tol)),
                           float(errors[-1]), n, coeffs, map_spec.fixed_point)


def multiplier_interval(n, coeffs, tol=DEFAULT):
    """Open interval of multipliers ``mu`` for which the averaged loop is stable."""
    if coeffs.n != n:
        raise ValueError(f"coefficient vector has degree {coeffs.n}, expected {n}")
    m = margins_geometric(coeffs, tol)
    return -m.k2, m.k1


def linearization(map_spec, coeffs, h=1e-6):
    """Central-difference Jacobian of the one-step update on the history window."""
    a = coeffs.array
    n = len(a)
    weights = a[::-1]
    base = np.full(n, map_spec.fixed_point)

    def step(window):
        return np.append(window[1:], map_spec(float(np.dot(weights, window))))

    J = np.empty((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        J[:, i] = (step(base + e) - step(base - e)) / (2 * h)
    return J


def closed_loop_polynomial(multiplier, coeffs):
    """``[1, k a_1, ..., k a_n]`` with ``k = -multiplier``."""
    return np.concatenate([[1.0], -multiplier * coeffs.array])


def spectral_radius(multiplier, coeffs):
    return float(np.abs(np.roots(closed_loop_polynomial(multiplier, coeffs))).max())
