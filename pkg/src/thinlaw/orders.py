"""Stochastic orders, log-concavity predicates and majorization.

Log-concavity style predicates (``is_log_concave``, ``is_ulc``, ``leq_lc``)
compare second differences of logarithms against ``eps_ineq``.  On a
truncated pmf the stored weights can be off by up to its deficit, so those
predicates only examine indices where ``40 * deficit / f_i <= eps_ineq``;
exact pmfs (deficit 0) are examined on their whole support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, LengthMismatch, PreconditionFailed
from .pmf import DEFAULT_TOL, Pmf, Tolerances, log_factorial
from .results import CheckResult, check_geq
from .transforms import convolve_all, thin

__all__ = [
    "ConvexTestFn",
    "OrderReport",
    "is_log_concave",
    "is_ulc",
    "leq_cx",
    "leq_lc",
    "leq_lc_poisson",
    "leq_st",
    "majorizes",
    "mixed_binomial_sum",
    "poisson_leq_lc",
    "schur_probe",
]

_TRUST_FACTOR = 40.0


@dataclass(frozen=True)
class OrderReport:
    """Verdict of an order predicate.

    ``witness`` is the first index (or threshold) where the defining
    inequality fails; ``margin`` is the smallest slack seen over all checks.
    """

    holds: bool
    witness: Optional[int] = None
    margin: float = math.inf
    reason: str = ""

    def __bool__(self):
        return self.holds


def _fail(witness, margin, reason):
    return OrderReport(False, None if witness is None else int(witness), float(margin), reason)


def _support_interval(f: Pmf):
    """(lo, hi) of supp(f), or the index of the first interior gap."""
    nz = np.flatnonzero(f.weights > 0)
    lo, hi = int(nz[0]), int(nz[-1])
    if nz.size != hi - lo + 1:
        gap = lo + int(np.flatnonzero(np.diff(nz) > 1)[0]) + 1
        return lo, hi, gap
    return lo, hi, None


def _trusted_window(f: Pmf, lo: int, hi: int, eps: float):
    if f.deficit == 0:
        return lo, hi
    ok = np.flatnonzero(f.weights >= _TRUST_FACTOR * f.deficit / eps)
    if ok.size == 0:
        return lo, lo - 1
    return max(lo, int(ok[0])), min(hi, int(ok[-1]))


def _concavity(seq: np.ndarray, offset: int, eps: float, reason: str) -> OrderReport:
    """Check second differences of ``seq`` (indexed from ``offset``) are <= eps."""
    if seq.size < 3:
        return OrderReport(True)
    d2 = seq[2:] - 2.0 * seq[1:-1] + seq[:-2]
    margin = float(np.min(-d2))
    bad = np.flatnonzero(d2 > eps)
    if bad.size:
        return _fail(offset + 1 + bad[0], margin, reason)
    return OrderReport(True, None, margin)


def is_log_concave(f: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """Interval support and f_i^2 >= f_{i-1} f_{i+1}, tested on log f."""
    lo, hi, gap = _support_interval(f)
    if gap is not None:
        return _fail(gap, -math.inf, "support is not an interval")
    a, b = _trusted_window(f, lo, hi, tol.eps_ineq)
    return _concavity(np.log(f.weights[a : b + 1]), a, tol.eps_ineq, "log f not concave")


def is_ulc(f: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """Ultra-log-concavity: i f_i / f_{i-1} nonincreasing, i.e. i! f_i log-concave."""
    lo, hi, gap = _support_interval(f)
    if gap is not None:
        return _fail(gap, -math.inf, "support is not an interval")
    a, b = _trusted_window(f, lo, hi, tol.eps_ineq)
    seq = np.log(f.weights[a : b + 1]) + log_factorial(b)[a:]
    return _concavity(seq, a, tol.eps_ineq, "i f_i / f_(i-1) increases")


def leq_lc(f: Pmf, g: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """f <=lc g: interval supports, supp f within supp g, log(f/g) concave on supp f."""
    flo, fhi, fgap = _support_interval(f)
    if fgap is not None:
        return _fail(fgap, -math.inf, "supp(f) is not an interval")
    glo, ghi, ggap = _support_interval(g)
    if ggap is not None:
        return _fail(ggap, -math.inf, "supp(g) is not an interval")
    if flo < glo or fhi > ghi:
        return _fail(flo if flo < glo else ghi + 1, -math.inf, "supp(f) not contained in supp(g)")
    a, b = _trusted_window(f, flo, fhi, tol.eps_ineq)
    a2, b2 = _trusted_window(g, a, b, tol.eps_ineq)
    a, b = max(a, a2), min(b, b2)
    seq = np.log(f.weights[a : b + 1]) - np.log(g.weights[a : b + 1])
    return _concavity(seq, a, tol.eps_ineq, "log(f/g) not concave")


def _log_poisson(lam: float, a: int, b: int) -> np.ndarray:
    i = np.arange(a, b + 1)
    return i * math.log(lam) - lam - log_factorial(b)[a:]


def leq_lc_poisson(f: Pmf, lam: float, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """f <=lc po(lam) with the Poisson evaluated exactly (no truncation).

    Equivalent to :func:`is_ulc` for every ``lam > 0``.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    lo, hi, gap = _support_interval(f)
    if gap is not None:
        return _fail(gap, -math.inf, "supp(f) is not an interval")
    a, b = _trusted_window(f, lo, hi, tol.eps_ineq)
    seq = np.log(f.weights[a : b + 1]) - _log_poisson(lam, a, b)
    return _concavity(seq, a, tol.eps_ineq, "log(f/po) not concave")


def poisson_leq_lc(lam: float, f: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """po(lam) <=lc f with the Poisson evaluated exactly.

    The Poisson support is all of Z+, so ``f`` must have interval support
    starting at 0 and must be a truncated infinite-support pmf (positive
    deficit); an exact finite pmf fails at ``support_max + 1``.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    lo, hi, gap = _support_interval(f)
    if gap is not None:
        return _fail(gap, -math.inf, "supp(f) is not an interval")
    if lo > 0:
        return _fail(0, -math.inf, "supp(po) not contained in supp(f)")
    if f.deficit == 0:
        return _fail(hi + 1, -math.inf, "supp(po) not contained in finite supp(f)")
    a, b = _trusted_window(f, lo, hi, tol.eps_ineq)
    seq = _log_poisson(lam, a, b) - np.log(f.weights[a : b + 1])
    return _concavity(seq, a, tol.eps_ineq, "log(po/f) not concave")


def _survival(f: Pmf, n: int) -> np.ndarray:
    """P(X >= i) for i = 0..n-1, accumulated from the tail."""
    w = np.zeros(n)
    w[: len(f)] = f.weights
    return np.cumsum(w[::-1])[::-1]


def leq_st(f: Pmf, g: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """Usual stochastic order: P(X > c) <= P(Y > c) for every c."""
    n = max(len(f), len(g)) + 1
    gap = _survival(g, n)[1:] - _survival(f, n)[1:]  # index c is P(. > c)
    margin = float(np.min(gap))
    bad = np.flatnonzero(gap < -tol.eps_ineq)
    if bad.size:
        return _fail(bad[0], margin, "survival function exceeds")
    return OrderReport(True, None, margin)


def leq_cx(f: Pmf, g: Pmf, tol: Tolerances = DEFAULT_TOL) -> OrderReport:
    """Convex order via tail sums: sum_{i>=k} P(X>=i) <= sum_{i>=k} P(Y>=i)."""
    if abs(f.mean - g.mean) > tol.eps_ineq:
        return OrderReport(False, None, -abs(f.mean - g.mean), "means differ")
    n = max(len(f), len(g)) + 1
    tf = np.cumsum(_survival(f, n)[::-1])[::-1]
    tg = np.cumsum(_survival(g, n)[::-1])[::-1]
    gap = (tg - tf)[: n - 1]
    margin = float(np.min(gap))
    bad = np.flatnonzero(gap < -tol.eps_ineq)
    if bad.size:
        return _fail(bad[0], margin, "tail sum exceeds")
    return OrderReport(True, None, margin)


def majorizes(b: Sequence[float], a: Sequence[float], eps: float = 1e-12) -> bool:
    """True iff ``b`` majorizes ``a``: equal totals, top-k sums of b dominate."""
    b = np.asarray(b, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatch(f"lengths {a.size} and {b.size} differ")
    if abs(a.sum() - b.sum()) > eps:
        return False
    top_b = np.cumsum(np.sort(b)[::-1])
    top_a = np.cumsum(np.sort(a)[::-1])
    return bool(np.all(top_b >= top_a - eps))


@dataclass(frozen=True)
class ConvexTestFn:
    """A convex function on the nonnegative integers.

    Build with :meth:`hinge`, :meth:`square` or :meth:`custom`.
    """

    kind: str
    k: int = 0
    table: tuple = ()

    @classmethod
    def hinge(cls, k: int) -> "ConvexTestFn":
        return cls("hinge", k=int(k))

    @classmethod
    def square(cls) -> "ConvexTestFn":
        return cls("square")

    @classmethod
    def custom(cls, table) -> "ConvexTestFn":
        t = np.asarray(table, dtype=np.float64)
        if t.size >= 3 and np.any(t[2:] - 2 * t[1:-1] + t[:-2] < -1e-12):
            raise DomainError("custom table is not discretely convex")
        return cls("custom", table=tuple(float(x) for x in t))

    def __call__(self, x):
        x = np.asarray(x)
        if self.kind == "hinge":
            return np.maximum(x - self.k, 0).astype(np.float64)
        if self.kind == "square":
            return (x * x).astype(np.float64)
        if self.kind == "custom":
            if np.any(x >= len(self.table)):
                raise DomainError("argument beyond the custom table")
            return np.asarray(self.table)[x]
        raise DomainError(f"unknown convex function kind {self.kind!r}")

    def expect(self, f: Pmf) -> float:
        return float(np.dot(f.weights, self(np.arange(len(f)))))

    def __str__(self):
        return f"hinge({self.k})" if self.kind == "hinge" else self.kind


def mixed_binomial_sum(f: Pmf, p: Sequence[float]) -> Pmf:
    """Pmf of Z_1 + ... + Z_n with Z_i ~ Bin(Y_i, p_i) and Y_i iid from f."""
    p = list(p)
    if not p:
        raise DomainError("need at least one thinning parameter")
    for pi in p:
        if not 0.0 <= pi <= 1.0:
            raise DomainError(f"p_i={pi!r} outside [0, 1]")
    return convolve_all(thin(f, pi) for pi in p)


def schur_probe(
    f: Pmf,
    p_a: Sequence[float],
    p_b: Sequence[float],
    phi: ConvexTestFn,
    tol: Tolerances = DEFAULT_TOL,
) -> CheckResult:
    """Schur concavity of p -> E phi(sum Z_i) at one pair with p_a majorized by p_b.

    Passes iff E phi under ``p_a`` >= E phi under ``p_b`` - eps_ineq.
    """
    report = is_ulc(f, tol)
    if not report:
        raise PreconditionFailed("schur_probe needs an ultra-log-concave f", report)
    if not majorizes(p_b, p_a):
        raise PreconditionFailed("p_b does not majorize p_a")
    lhs = phi.expect(mixed_binomial_sum(f, p_a))
    rhs = phi.expect(mixed_binomial_sum(f, p_b))
    name = f"schur[{phi}] {tuple(p_a)} vs {tuple(p_b)}"
    return check_geq(name, lhs, rhs, tol.eps_ineq)
