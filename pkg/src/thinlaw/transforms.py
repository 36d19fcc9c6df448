"""Thinning, convolution and size-biasing of pmfs."""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ZeroMean
from .pmf import Pmf

__all__ = [
    "convolve",
    "convolve_all",
    "law_of_thin_numbers",
    "law_of_thin_numbers_direct",
    "self_convolve",
    "size_bias",
    "thin",
]


def thin(f: Pmf, alpha: float) -> Pmf:
    """Binomial thinning T_alpha(f): the pmf of Bin(Y, alpha) with Y ~ f.

    The double sum ``sum_j f_j bi(i; j, alpha)`` is evaluated as a Horner
    recursion on the generating function ``sum_j f_j (1 - alpha + alpha z)^j``.
    Every step adds nonnegative terms, so tail masses keep full relative
    precision.  The deficit is carried over unchanged.
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha={alpha!r} outside [0, 1]")
    if alpha == 1.0:
        return f
    if alpha == 0.0:
        return Pmf([1.0 - f.deficit], deficit=f.deficit)
    beta = 1.0 - alpha
    w = f.weights
    m = w.size - 1
    acc = np.zeros(m + 1)
    acc[0] = w[m]
    for j in range(m - 1, -1, -1):
        k = m - j  # acc currently holds coefficients 0..k-1
        acc[k] = alpha * acc[k - 1]
        acc[1:k] = beta * acc[1:k] + alpha * acc[: k - 1]
        acc[0] = beta * acc[0] + w[j]
    return Pmf(acc, deficit=f.deficit)


def convolve(f: Pmf, g: Pmf) -> Pmf:
    """Pmf of the sum of independent draws from f and g (direct, not FFT)."""
    w = np.convolve(f.weights, g.weights)
    deficit = f.deficit + g.deficit - f.deficit * g.deficit
    return Pmf(w, deficit=deficit)


def convolve_all(fs) -> Pmf:
    fs = list(fs)
    if not fs:
        raise DomainError("need at least one pmf")
    out = fs[0]
    for g in fs[1:]:
        out = convolve(out, g)
    return out


def self_convolve(f: Pmf, n: int) -> Pmf:
    """n-fold convolution f^{*n} by binary exponentiation."""
    if n < 1 or int(n) != n:
        raise DomainError(f"n={n!r} must be a positive integer")
    n = int(n)
    result = None
    base = f
    while True:
        if n & 1:
            result = base if result is None else convolve(result, base)
        n >>= 1
        if not n:
            return result
        base = convolve(base, base)


def size_bias(f: Pmf) -> Pmf:
    """S(f)_i = (i + 1) f_{i+1} / mean(f).

    The result is normalized by the mean of the stored weights, so it has
    zero deficit even when ``f`` is truncated.
    """
    lam = f.mean
    if not lam > 0:
        raise ZeroMean("size-biasing needs a positive mean")
    w = f.weights
    i = np.arange(1, w.size)
    return Pmf(i * w[1:] / lam)


def law_of_thin_numbers(f: Pmf, n: int) -> Pmf:
    """T_{1/n}(f^{*n}), computed in the cheap order (T_{1/n} f)^{*n}."""
    if n < 1 or int(n) != n:
        raise DomainError(f"n={n!r} must be a positive integer")
    if n == 1:
        return f
    return self_convolve(thin(f, 1.0 / n), int(n))


def law_of_thin_numbers_direct(f: Pmf, n: int) -> Pmf:
    """Same pmf as :func:`law_of_thin_numbers`, convolving before thinning."""
    if n == 1:
        return f
    return thin(self_convolve(f, n), 1.0 / n)
