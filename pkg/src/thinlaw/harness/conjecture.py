"""Finite-difference explorer for complete monotonicity of divergence sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, TooShort
from ..info import d_poisson
from ..pmf import DEFAULT_TOL, Tolerances, binomial, negative_binomial

__all__ = ["FiniteDiffTable", "MAX_ORDER", "complete_monotonicity", "conjecture_sequence"]

MAX_ORDER = 6
ROUNDING = 1e-14
NB_TAIL = 1e-18


@dataclass
class FiniteDiffTable:
    """Forward differences ``diffs[k][j] = Delta^k s(n_j)`` with sign verdicts.

    ``sign_ok[k][j]`` is ``(-1)^k diffs[k][j] >= -max(eps_ineq, noise_floor[k])``.
    """

    n_values: list[int]
    base: list[float]
    diffs: list[list[float]]
    sign_ok: list[list[bool]]
    noise_floor: list[float]

    @property
    def order(self) -> int:
        return len(self.diffs) - 1

    def violations(self, max_order: int | None = None) -> list[tuple[int, int, float]]:
        """``(k, n, value)`` for each sign failure with k <= max_order."""
        top = self.order if max_order is None else min(max_order, self.order)
        return [
            (k, self.n_values[j], self.diffs[k][j])
            for k in range(top + 1)
            for j, ok in enumerate(self.sign_ok[k])
            if not ok
        ]

    def ok(self, max_order: int | None = None) -> bool:
        return not self.violations(max_order)


def complete_monotonicity(s, K: int, n_values=None, tol: Tolerances = DEFAULT_TOL) -> FiniteDiffTable:
    """Difference triangle of ``s`` up to order ``K`` with per-order noise floors."""
    if not 0 <= K <= MAX_ORDER:
        raise DomainError(f"order K must be in 0..{MAX_ORDER}")
    s = np.asarray(s, dtype=float)
    if s.size < K + 1:
        raise TooShort(f"need at least {K + 1} terms for order {K}, got {s.size}")
    if n_values is None:
        n_values = list(range(1, s.size + 1))
    scale = float(np.max(np.abs(s))) if s.size else 0.0
    diffs, signs, floors = [], [], []
    cur = s
    for k in range(K + 1):
        floor = 2.0**k * ROUNDING * scale
        signed = (-1.0) ** k * cur
        diffs.append(cur.tolist())
        signs.append((signed >= -max(tol.eps_ineq, floor)).tolist())
        floors.append(floor)
        cur = np.diff(cur)
    return FiniteDiffTable(list(n_values), s.tolist(), diffs, signs, floors)


def conjecture_sequence(family: str, lam: float, n_max: int) -> tuple[list[int], list[float]]:
    """n and D(bi(n, lam/n)) for n >= max(1, ceil(lam)), or D(nb(n, n/(lam+n))) for n >= 1.

    Negative binomials are truncated at tail mass 1e-18 so the truncation
    error sits well below the difference noise floor.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if family == "bin":
        start = max(1, math.ceil(lam))
        if n_max < start:
            raise DomainError(f"binomial family needs n >= lam; n_max={n_max} < {start}")
        ns = list(range(start, n_max + 1))
        return ns, [d_poisson(binomial(n, lam / n)) for n in ns]
    if family == "nb":
        if n_max < 1:
            raise DomainError("n_max must be >= 1")
        ns = list(range(1, n_max + 1))
        return ns, [d_poisson(negative_binomial(n, n / (lam + n), tail_eps=NB_TAIL)) for n in ns]
    raise DomainError(f"unknown family {family!r}; choose bin or nb")
