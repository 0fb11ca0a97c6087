import numpy as np
import pytest
from hypothesis import strategies as st

from conjtrig.trigpoly import CoefficientVector


def random_normalized(rng, n):
    """Uniform perturbation of the flat vector; entries stay O(1)."""
    x = rng.uniform(-1.0, 1.0, n)
    return CoefficientVector(x - x.mean() + 1.0 / n)


def direct_pair(a, t):
    """Per-term evaluation, independent of the recurrence under test."""
    a = np.asarray(a, dtype=float)
    j = np.arange(1, len(a) + 1)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return np.cos(np.outer(t, j)) @ a, np.sin(np.outer(t, j)) @ a


def sign_change_zeros(a, m=20000):
    """Sign-change zeros of S on (0, pi) by grid bracketing plus brentq."""
    from scipy.optimize import brentq

    ts = np.linspace(0, np.pi, m + 1)[1:-1]
    _, S = direct_pair(a, ts)
    idx = np.nonzero(np.sign(S[:-1]) * np.sign(S[1:]) < 0)[0]
    f = lambda t: direct_pair(a, t)[1][0]
    return [brentq(f, ts[i], ts[i + 1], xtol=1e-15) for i in idx]


def schur_cohn_stable(p):
    """Jury/Schur-Cohn reduction: all roots of monic ``p`` strictly inside the disk.

    ``p`` is highest degree first.
    """
    p = np.asarray(p, dtype=float)
    while len(p) > 1:
        lead, last = p[0], p[-1]
        if abs(last) >= abs(lead):
            return False
        k = last / lead
        p = (p - k * p[::-1])[:-1]
    return True


@st.composite
def coefficient_vectors(draw, min_n=1, max_n=16):
    n = draw(st.integers(min_n, max_n))
    x = draw(st.lists(st.floats(-1, 1, allow_nan=False), min_size=n, max_size=n))
    x = np.array(x)
    return CoefficientVector(x - x.mean() + 1.0 / n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
