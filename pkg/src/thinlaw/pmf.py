"""Finite-support probability mass functions on {0, 1, 2, ...}.

A :class:`Pmf` stores the masses at 0..m as a read-only float64 array plus a
``deficit``: the probability removed when an infinite-support family was cut
off at a tail threshold.  Deficits are carried, never renormalized away, so
the truncation error of every downstream quantity stays auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special, stats

from .errors import DomainError, EmptyOrNegative

__all__ = [
    "DEFAULT_TOL",
    "Pmf",
    "Tolerances",
    "approx_eq",
    "bernoulli",
    "binomial",
    "from_weights",
    "geometric",
    "log_factorial",
    "mean",
    "negative_binomial",
    "point_mass",
    "poisson",
    "support_max",
    "uniform",
    "variance",
]

EPS_MASS = 1e-12
NEG_CLAMP = 1e-15
# Trailing masses below this are flushed into the deficit; subnormals lose
# the relative precision the log-domain order tests depend on.
TINY = 1e-300


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the library.

    Attributes:
        eps_mass: Allowed mass-balance error ``|sum(weights) + deficit - 1|``.
        eps_eq: Pointwise tolerance for pmf equality.
        eps_ineq: Slack allowed on every inequality check.
        tail_eps: Tail mass at which infinite-support families are cut.
    """

    eps_mass: float = EPS_MASS
    eps_eq: float = 1e-10
    eps_ineq: float = 1e-9
    tail_eps: float = 1e-15

    def __post_init__(self):
        for name in ("eps_mass", "eps_eq", "eps_ineq", "tail_eps"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive")
        if not self.eps_mass <= self.eps_eq <= self.eps_ineq:
            raise DomainError("tolerances must satisfy eps_mass <= eps_eq <= eps_ineq")


DEFAULT_TOL = Tolerances()


class Pmf:
    """Immutable pmf on the nonnegative integers with a truncation deficit.

    ``weights[i]`` is the mass at ``i``.  The constructor clamps rounding
    negatives (above ``-1e-15``), trims trailing zeros and checks that
    ``sum(weights) + deficit == 1`` to within ``1e-12``.  Use
    :func:`from_weights` for unnormalized input.
    """

    __slots__ = ("_w", "_deficit", "_mean")

    def __init__(self, weights, deficit: float = 0.0):
        w = np.array(weights, dtype=np.float64).ravel()
        if w.size == 0 or not np.all(np.isfinite(w)):
            raise EmptyOrNegative("weights must be a nonempty finite sequence")
        if np.any(w < -NEG_CLAMP):
            raise EmptyOrNegative(f"negative weight {w.min()!r}")
        w[w < 0] = 0.0
        deficit = float(deficit)
        if deficit < 0:
            if deficit < -NEG_CLAMP:
                raise DomainError(f"negative deficit {deficit!r}")
            deficit = 0.0

        nz = np.flatnonzero(w >= TINY)
        if nz.size == 0:
            raise EmptyOrNegative("all weights are zero")
        last = nz[-1]
        flushed = float(w[last + 1 :].sum())
        w = w[: last + 1].copy()
        deficit += flushed

        balance = float(math.fsum(w)) + deficit - 1.0
        if abs(balance) > EPS_MASS:
            raise DomainError(f"mass balance off by {balance:.3e}")
        w.setflags(write=False)
        self._w = w
        self._deficit = deficit
        self._mean = None

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def deficit(self) -> float:
        return self._deficit

    @property
    def mean(self) -> float:
        if self._mean is None:
            self._mean = float(np.dot(np.arange(self._w.size), self._w))
        return self._mean

    @property
    def variance(self) -> float:
        i = np.arange(self._w.size)
        return float(np.dot((i - self.mean) ** 2, self._w))

    @property
    def support_max(self) -> int:
        return self._w.size - 1

    def __len__(self):
        return self._w.size

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)) and i >= self._w.size:
            return 0.0
        return self._w[i]

    def __eq__(self, other):
        if not isinstance(other, Pmf):
            return NotImplemented
        return self._deficit == other._deficit and np.array_equal(self._w, other._w)

    def __hash__(self):
        return hash((self._w.tobytes(), self._deficit))

    def __repr__(self):
        body = np.array2string(self._w, precision=6, threshold=12)
        if self._deficit:
            return f"Pmf({body}, deficit={self._deficit:.2e})"
        return f"Pmf({body})"


def from_weights(w) -> Pmf:
    """Normalize nonnegative weights into a pmf with zero deficit.

    >>> from_weights([1, 2, 1]).weights.tolist()
    [0.25, 0.5, 0.25]
    """
    a = np.array(w, dtype=np.float64).ravel()
    if a.size == 0 or np.any(a < -NEG_CLAMP) or not np.all(np.isfinite(a)):
        raise EmptyOrNegative("weights must be finite and nonnegative")
    a[a < 0] = 0.0
    s = math.fsum(a)
    if not s > 0:
        raise EmptyOrNegative("weights sum to zero")
    return Pmf(a / s)


def point_mass(k: int = 0) -> Pmf:
    w = np.zeros(k + 1)
    w[k] = 1.0
    return Pmf(w)


def uniform(k: int) -> Pmf:
    """Uniform pmf on {0, ..., k}."""
    return from_weights(np.ones(k + 1))


@lru_cache(maxsize=None)
def _log_factorial_table(size: int) -> np.ndarray:
    t = special.gammaln(np.arange(size, dtype=np.float64) + 1.0)
    t.setflags(write=False)
    return t


def log_factorial(n: int) -> np.ndarray:
    """Table of ``log(k!)`` for ``k = 0..n`` (shared, grown in powers of two)."""
    size = 1 << max(int(n), 1).bit_length()
    return _log_factorial_table(max(size, 64))[: n + 1]


def _check_prob(p, name="p", open_=False):
    if not (0.0 <= p <= 1.0) or (open_ and p in (0.0, 1.0)):
        interval = "(0, 1)" if open_ else "[0, 1]"
        raise DomainError(f"{name}={p!r} outside {interval}")


def binomial(n: int, p: float) -> Pmf:
    """bi(n, p) through the log-factorial table."""
    if n < 0 or int(n) != n:
        raise DomainError(f"n={n!r} must be a nonnegative integer")
    n = int(n)
    _check_prob(p)
    if p == 0.0 or n == 0:
        return point_mass(0)
    if p == 1.0:
        return point_mass(n)
    lf = log_factorial(n)
    i = np.arange(n + 1)
    logw = lf[n] - lf[i] - lf[n - i] + i * math.log(p) + (n - i) * math.log1p(-p)
    w = np.exp(logw)
    return Pmf(w / math.fsum(w))


def bernoulli(p: float) -> Pmf:
    _check_prob(p)
    return Pmf([1.0 - p, p])


def _truncation_point(sf, tail_eps: float, guess: int) -> int:
    """Smallest N with sf(N) = P(X > N) < tail_eps."""
    n = max(int(guess), 0)
    while sf(n) >= tail_eps:
        n = 2 * n + 1
    lo, hi = -1, n  # sf(lo) >= tail_eps (or lo = -1), sf(hi) < tail_eps
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sf(mid) < tail_eps:
            hi = mid
        else:
            lo = mid
    return hi


def poisson(lam: float, tail_eps: float = DEFAULT_TOL.tail_eps) -> Pmf:
    """po(lam) cut at the first N whose tail mass is below ``tail_eps``."""
    if not lam >= 0:
        raise DomainError(f"lambda={lam!r} must be >= 0")
    if lam == 0:
        return point_mass(0)
    dist = stats.poisson(lam)
    n = _truncation_point(dist.sf, tail_eps, lam + 10.0 * math.sqrt(lam) + 10)
    i = np.arange(n + 1)
    w = np.exp(i * math.log(lam) - lam - log_factorial(n))
    return Pmf(w, deficit=float(dist.sf(n)))


def negative_binomial(r: float, p: float, tail_eps: float = DEFAULT_TOL.tail_eps) -> Pmf:
    """nb(r, p): mass C(r+i-1, i) p^r (1-p)^i, truncated at ``tail_eps``."""
    if not r > 0:
        raise DomainError(f"r={r!r} must be > 0")
    _check_prob(p, open_=True)
    dist = stats.nbinom(r, p)
    m = r * (1 - p) / p
    n = _truncation_point(dist.sf, tail_eps, m + 10.0 * math.sqrt(m / p) + 10)
    i = np.arange(n + 1)
    logw = (
        special.gammaln(r + i)
        - special.gammaln(r)
        - log_factorial(n)
        + r * math.log(p)
        + i * math.log1p(-p)
    )
    return Pmf(np.exp(logw), deficit=float(dist.sf(n)))


def geometric(p: float, tail_eps: float = DEFAULT_TOL.tail_eps) -> Pmf:
    """Geometric pmf ``p (1-p)^i`` on {0, 1, ...}."""
    return negative_binomial(1, p, tail_eps)


def mean(f: Pmf) -> float:
    return f.mean


def variance(f: Pmf) -> float:
    return f.variance


def support_max(f: Pmf) -> int:
    return f.support_max


def linf(f: Pmf, g: Pmf) -> float:
    """Sup-norm distance between the weight vectors over the union of supports."""
    n = max(len(f), len(g))
    a = np.zeros(n)
    b = np.zeros(n)
    a[: len(f)] = f.weights
    b[: len(g)] = g.weights
    return float(np.max(np.abs(a - b)))


def approx_eq(f: Pmf, g: Pmf, eps_eq: float = DEFAULT_TOL.eps_eq) -> bool:
    return linf(f, g) <= eps_eq
