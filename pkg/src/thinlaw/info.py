"""Entropy, divergences and related scalar functionals (natural logs).

Divergences are plain floats; ``math.inf`` marks a support violation.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConsistencyError, DeficitTooLarge, ZeroMean
from .pmf import Pmf, log_factorial
from .transforms import self_convolve, size_bias

__all__ = [
    "chi_squared",
    "d_poisson",
    "entropy",
    "l_n",
    "poisson_divergence",
    "relative_entropy",
    "scaled_fisher",
    "total_variation",
]

MAX_DEFICIT = 1e-12
NEG_ROUNDING = 1e-12


def _require_small_deficit(*fs: Pmf):
    for f in fs:
        if f.deficit > MAX_DEFICIT:
            raise DeficitTooLarge(f"deficit {f.deficit:.3e} exceeds {MAX_DEFICIT:g}")


def _clamp(value: float) -> float:
    if value < 0:
        if value < -NEG_ROUNDING:
            raise ConsistencyError(f"divergence evaluated to {value:.3e}")
        return 0.0
    return value


def _padded(f: Pmf, n: int) -> np.ndarray:
    out = np.zeros(n)
    out[: len(f)] = f.weights
    return out


def entropy(f: Pmf) -> float:
    """Shannon entropy with 0 log 0 = 0."""
    _require_small_deficit(f)
    w = f.weights[f.weights > 0]
    return float(-np.dot(w, np.log(w)))


def relative_entropy(f: Pmf, g: Pmf) -> float:
    """D(f | g); infinite when supp(f) is not contained in supp(g)."""
    _require_small_deficit(f, g)
    n = len(f)
    a = f.weights
    b = _padded(g, n) if len(g) < n else g.weights[:n]
    pos = a > 0
    if np.any(b[pos] == 0):
        return math.inf
    a, b = a[pos], b[pos]
    return _clamp(float(np.dot(a, np.log(a) - np.log(b))))


def poisson_divergence(f: Pmf, lam: float) -> float:
    """D(f | po(lam)) summed exactly over supp(f); no Poisson truncation.

    Each term is ``f_i (log f_i + log i! - i log lam + lam)``.  With ``lam``
    equal to the mean this is the closed form
    ``sum f_i log i! - lam log lam + lam - H(f)`` evaluated termwise.
    """
    _require_small_deficit(f)
    w = f.weights
    i = np.arange(w.size)
    pos = w > 0
    if lam == 0:
        return 0.0 if w.size == 1 else math.inf
    logpo = i[pos] * math.log(lam) - lam - log_factorial(w.size - 1)[pos]
    return _clamp(float(np.dot(w[pos], np.log(w[pos]) - logpo)))


def d_poisson(f: Pmf) -> float:
    """D(f) = D(f | po(mean f))."""
    lam = f.mean
    if not lam > 0:
        raise ZeroMean("D(f) needs a positive mean")
    return poisson_divergence(f, lam)


def chi_squared(f: Pmf, g: Pmf) -> float:
    """sum over supp(g) of g_i (f_i/g_i - 1)^2; infinite if supp(f) escapes supp(g)."""
    _require_small_deficit(f, g)
    n = max(len(f), len(g))
    a, b = _padded(f, n), _padded(g, n)
    if np.any((a > 0) & (b == 0)):
        return math.inf
    pos = b > 0
    return float(np.sum((a[pos] - b[pos]) ** 2 / b[pos]))


def scaled_fisher(f: Pmf) -> float:
    """K(f) = mean(f) * chi^2(S(f), f)."""
    lam = f.mean
    if not lam > 0:
        raise ZeroMean("scaled Fisher information needs a positive mean")
    return lam * chi_squared(size_bias(f), f)


def total_variation(f: Pmf, g: Pmf) -> float:
    """V(f, g) = sum_i |f_i - g_i|, in [0, 2]."""
    n = max(len(f), len(g))
    return float(np.sum(np.abs(_padded(f, n) - _padded(g, n))))


def l_n(f: Pmf, n: int) -> float:
    """E[Xbar_n log(Xbar_n / lambda)] for the mean Xbar_n of n draws from f."""
    lam = f.mean
    if not lam > 0:
        raise ZeroMean("l_n needs a positive mean")
    g = self_convolve(f, n)
    k = np.arange(1, len(g))
    w = g.weights[1:]
    pos = w > 0
    x = k[pos] / n
    return float(np.dot(w[pos], x * np.log(x / lam)))
