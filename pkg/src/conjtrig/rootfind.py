"""Zeros of ``S`` on ``[0, pi]`` and the conditional minima of ``C`` over them.

Interior zeros are the roots of the cosine part ``Q`` (a Chebyshev series of
degree ``n - 1`` in ``c = cos t``) inside ``(-1, 1)``.  They come from the
eigenvalues of the colleague matrix, so tangential (double) zeros are not
missed the way a grid scan would miss them.
"""

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .config import DEFAULT
from .trigpoly import CoefficientVector, clenshaw, cosine_part_chebyshev

__all__ = ["RootFindError", "Zero", "ZeroSet", "cosine_roots", "zero_set", "rho", "rho1"]

_STALL = 1e-9
_EPS = np.finfo(float).eps


class RootFindError(ArithmeticError):
    """Newton refinement of a real eigenvalue did not reach the residual target."""


@dataclass(frozen=True)
class Zero:
    t: float
    sign_change: bool
    c_value: float
    multiplicity: int = 1


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple

    @property
    def interior(self):
        return tuple(z for z in self.zeros if 0.0 < z.t < math.pi)

    @property
    def sign_change_interior(self):
        return tuple(z for z in self.interior if z.sign_change)

    @property
    def at_pi(self):
        return self.zeros[-1]

    def __iter__(self):
        return iter(self.zeros)

    def __len__(self):
        return len(self.zeros)


def _newton(series, x, order, tol):
    """Newton on the ``order``-th derivative of ``series``; ``None`` if it wanders off."""
    f_series = cheb.chebder(series, order) if order else series
    df_series = cheb.chebder(f_series)
    start = x
    prev = math.inf
    for _ in range(tol.newton_max_iter):
        f = cheb.chebval(x, f_series)
        if f == 0.0:
            break
        df = cheb.chebval(x, df_series)
        if df == 0.0:
            return None
        step = f / df
        x -= step
        if abs(x - start) > 1e-3:
            return None
        if abs(step) <= 4 * _EPS * max(1.0, abs(x)):
            break
        # at a multiple root the iterate settles into rounding noise
        if abs(step) < _STALL and abs(step) >= prev:
            break
        prev = abs(step)
    return x


def _group(values, radius):
    groups = []
    for v in sorted(values):
        if groups and v - groups[-1][-1] <= radius:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def cosine_roots(coeffs, tol=DEFAULT):
    """Real roots of ``Q`` in ``(-1, 1)`` as ``(c, multiplicity, sign_change)`` triples.

    Multiplicity is the number of colleague-matrix eigenvalues that collapse
    onto the root.  Its parity decides the sign change; a direct sign probe of
    ``Q`` either side of the root overrides the parity when the two disagree.
    """
    series = np.trim_zeros(cosine_part_chebyshev(coeffs), "b")
    if len(series) < 2:
        return []
    eig = cheb.chebroots(series)
    r = tol.cluster_radius
    near_real = eig[(np.abs(eig.imag) <= r) & (np.abs(eig.real) < 1.0 + r)].real

    refined = []
    for group in _group(near_real, r):
        m = len(group)
        x = _newton(series, float(np.mean(group)), m - 1, tol)
        ok = x is not None and abs(cheb.chebval(x, series)) <= tol.root_residual
        if not ok:
            if m % 2:
                raise RootFindError(
                    f"root near c={np.mean(group):.17g} (multiplicity {m}) did not "
                    f"refine to |Q| <= {tol.root_residual:g}"
                )
            continue  # complex pair hugging the axis, not a zero
        refined.append((x, m))

    # separately refined eigenvalues of one multiple root land on the same point
    merged = []
    for x, m in sorted(refined):
        if merged and x - merged[-1][0] <= r:
            px, pm = merged[-1]
            merged[-1] = (px, pm + m)
        else:
            merged.append((x, m))
    merged = [
        (_newton(series, x, m - 1, tol) if m > 1 else x, m) for x, m in merged
    ]
    merged = [(x, m) for x, m in merged
              if x is not None and abs(x) < 1.0 - tol.boundary_guard]

    noise = 64 * _EPS * float(np.sum(np.abs(series)))
    out = []
    for i, (x, m) in enumerate(merged):
        gaps = [tol.sign_probe]
        if i > 0:
            gaps.append(0.5 * (x - merged[i - 1][0]))
        if i + 1 < len(merged):
            gaps.append(0.5 * (merged[i + 1][0] - x))
        h = min(gaps)
        lo, hi = cheb.chebval(x - h, series), cheb.chebval(x + h, series)
        sign_change = bool(m % 2)
        if min(abs(lo), abs(hi)) > noise:
            sign_change = bool(lo * hi < 0)
        out.append((x, m, sign_change))
    return out


def zero_set(coeffs, tol=DEFAULT):
    """All zeros of ``S`` on ``[0, pi]``, with sign-change flags and ``C`` values.

    ``t = 0`` and ``t = pi`` are always present.  ``S`` is odd about both
    endpoints, so both are flagged as sign changes.
    """
    a = coeffs.array if isinstance(coeffs, CoefficientVector) else np.asarray(coeffs, float)
    roots = cosine_roots(a, tol)
    ts = [0.0] + [math.acos(x) for x, _, _ in reversed(roots)] + [math.pi]
    C, _, _ = clenshaw(a, np.array(ts))
    zeros = [Zero(0.0, True, float(C[0]))]
    for k, (x, m, sc) in enumerate(reversed(roots), start=1):
        zeros.append(Zero(ts[k], sc, float(C[k]), m))
    zeros.append(Zero(math.pi, True, float(C[-1])))
    return ZeroSet(tuple(zeros))


def _zeros(coeffs_or_set, tol):
    if isinstance(coeffs_or_set, ZeroSet):
        return coeffs_or_set
    return zero_set(coeffs_or_set, tol)


def rho(coeffs, tol=DEFAULT):
    """Minimum of ``C`` over every zero of ``S`` on ``[0, pi]``."""
    return min(z.c_value for z in _zeros(coeffs, tol))


def rho1(coeffs, tol=DEFAULT):
    """Minimum of ``C`` over sign-changing interior zeros of ``S`` and ``t = pi``."""
    zs = _zeros(coeffs, tol)
    return min([zs.at_pi.c_value] + [z.c_value for z in zs.sign_change_interior])
