"""Brute-force checks of the extremal value ``-tan^2(pi / (2(n+1)))``.

The search maximizes ``rho1`` over normalized coefficient vectors with
``sum |a_j| <= 2``: a full grid over the free coordinates ``a_1..a_{n-1}``
(``a_n`` closes the normalization), then Nelder-Mead polishing from the best
grid points.  It uses nothing from the closed forms, so agreement with them is
an independent confirmation.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import itertools
import logging
import math

import numpy as np
from scipy.optimize import minimize

from .config import DEFAULT
from .rootfind import RootFindError, rho, rho1
from .trigpoly import CoefficientVector, epsilon_family, theorem_value

__all__ = ["SearchReport", "brute_force_sup", "epsilon_convergence", "MAX_SEARCH_DEGREE"]

log = logging.getLogger(__name__)

MAX_SEARCH_DEGREE = 5
BOX = 2.0
N_STARTS = 10


@dataclass(frozen=True)
class SearchReport:
    n: int
    best_value: float
    best_coeffs: CoefficientVector
    theorem_value: float
    evaluations: int
    seed: int

    @property
    def gap(self):
        return self.theorem_value - self.best_value

    def as_dict(self):
        return {
            "n": self.n,
            "best_value": self.best_value,
            "best_coeffs": list(self.best_coeffs.a),
            "theorem_value": self.theorem_value,
            "gap": self.gap,
            "evaluations": self.evaluations,
            "seed": self.seed,
        }


def _complete(free):
    return np.append(free, 1.0 - math.fsum(free))


def _objective(free):
    """``rho1`` of the completed vector, ``-inf`` outside the search box."""
    a = _complete(free)
    excess = np.abs(a).sum() - BOX
    if excess > 0:
        return -10.0 - excess
    try:
        return rho1(CoefficientVector(a), DEFAULT)
    except RootFindError:
        log.debug("rho1 failed at %s", a)
        return -math.inf


def _evaluate_chunk(points):
    return [_objective(p) for p in points]


def _grid(n, density):
    axis = np.linspace(-BOX, BOX, density)
    pts = np.array(list(itertools.product(axis, repeat=n - 1)))
    last = 1.0 - pts.sum(axis=1)
    keep = np.abs(pts).sum(axis=1) + np.abs(last) <= BOX
    return pts[keep], axis[1] - axis[0]


def _grid_values(points, workers):
    if workers <= 1:
        return np.array(_evaluate_chunk(points))
    chunks = np.array_split(points, workers * 4)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so the merge is deterministic
        parts = list(pool.map(_evaluate_chunk, chunks))
    return np.array([v for part in parts for v in part])


def brute_force_sup(n, grid_density=200, refinement_rounds=3, seed=0, workers=1):
    """Grid search plus simplex refinement for ``sup rho1`` at degree ``n``."""
    if int(n) != n or n < 1:
        raise ValueError(f"degree must be a positive integer, got {n!r}")
    if n > MAX_SEARCH_DEGREE:
        raise ValueError(f"brute force is limited to n <= {MAX_SEARCH_DEGREE}")
    if grid_density < 2 or refinement_rounds < 0:
        raise ValueError("grid_density >= 2 and refinement_rounds >= 0 required")
    n = int(n)
    target = theorem_value(n)
    if n == 1:
        only = CoefficientVector((1.0,))
        return SearchReport(1, rho1(only), only, target, 1, seed)

    rng = np.random.default_rng(seed)
    points, spacing = _grid(n, grid_density)
    if len(points) == 0:
        raise ValueError(f"grid density {grid_density} leaves no point with sum |a| <= {BOX}")
    values = _grid_values(points, workers)
    evaluations = len(points)
    order = np.argsort(-values, kind="stable")
    # candidates: (value, free coordinates)
    pool = [(float(values[i]), points[i].copy()) for i in order[:N_STARTS]]

    counter = [0]

    def neg_objective(x):
        counter[0] += 1
        return -_objective(x)

    scale = spacing
    for rnd in range(refinement_rounds):
        starts = sorted(pool, key=lambda p: -p[0])[:N_STARTS]
        found = []
        for _, x0 in starts:
            if rnd:
                x0 = x0 + rng.normal(scale=scale, size=x0.shape)
            simplex = np.vstack([x0, x0 + scale * np.eye(len(x0))])
            res = minimize(
                neg_objective, x0, method="Nelder-Mead",
                options={"initial_simplex": simplex, "xatol": 1e-10,
                         "fatol": 1e-10, "maxiter": 2000},
            )
            found.append((-float(res.fun), res.x.copy()))
        pool.extend(found)
        scale *= 0.1

    evaluations += counter[0]
    best_value, best_free = max(pool, key=lambda p: p[0])
    return SearchReport(n, best_value, CoefficientVector(_complete(best_free)),
                        target, evaluations, seed)


def epsilon_convergence(n, eps_sequence):
    """``(eps, rho)`` along the perturbed optimal family for decreasing ``eps``."""
    eps = [float(e) for e in eps_sequence]
    if not eps or any(e <= 0 for e in eps):
        raise ValueError("eps values must be positive")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps sequence must be strictly decreasing")
    return [(e, rho(epsilon_family(n, e))) for e in eps]
