"""n-indexed sequences of functionals along the law of thin numbers."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DomainError, ZeroMean
from ..info import (
    d_poisson,
    entropy,
    l_n,
    relative_entropy,
    scaled_fisher,
    total_variation,
)
from ..pmf import DEFAULT_TOL, Pmf, Tolerances, poisson
from ..results import CheckResult, check_geq, check_leq
from ..transforms import law_of_thin_numbers, self_convolve, size_bias, thin

__all__ = ["COLUMNS", "SequenceTable", "monotone_links", "sequences"]

# Only h_n and h_tilde may be infinite (support violations of size-biasing).
COLUMNS = ("d", "t", "r", "h", "h_n", "h_tilde", "K", "l_n", "tv")


@dataclass
class SequenceTable:
    n_values: list[int]
    columns: dict[str, list[float]] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.columns[name]

    def rows(self):
        names = list(self.columns)
        for k, n in enumerate(self.n_values):
            yield n, {c: self.columns[c][k] for c in names}


class _Lazy:
    """Per-n cache of the pmfs the column formulas share."""

    def __init__(self, f: Pmf):
        self.f = f
        self._law = {}
        self._poisson = None

    def law(self, n):
        if n not in self._law:
            self._law[n] = law_of_thin_numbers(self.f, n)
        return self._law[n]

    def poisson(self):
        if self._poisson is None:
            self._poisson = poisson(self.f.mean)
        return self._poisson


def _column(name, lz: _Lazy, n: int) -> float:
    f = lz.f
    if name == "d":
        return d_poisson(lz.law(n))
    if name == "t":
        return n * d_poisson(thin(f, 1.0 / n))
    if name == "r":
        return d_poisson(self_convolve(f, n)) / n
    if name == "h":
        return entropy(lz.law(n))
    if name == "h_n":
        g = lz.law(n)
        return relative_entropy(g, size_bias(g))
    if name == "h_tilde":
        g = lz.law(n)
        return relative_entropy(size_bias(g), g)
    if name == "K":
        return scaled_fisher(lz.law(n))
    if name == "l_n":
        return l_n(f, n)
    if name == "tv":
        return total_variation(lz.law(n), lz.poisson())
    raise DomainError(f"unknown column {name!r}; choose from {', '.join(COLUMNS)}")


def sequences(f: Pmf, n_max: int, columns=("d", "t", "r", "h"), n_min: int = 1) -> SequenceTable:
    """Tabulate the named functionals for n = n_min..n_max.

    d(n) = D(T_{1/n}(f^{*n})), t(n) = n D(T_{1/n} f), r(n) = D(f^{*n}) / n,
    h(n) = H(T_{1/n}(f^{*n})); see :data:`COLUMNS` for the rest.
    """
    if not f.mean > 0:
        raise ZeroMean("sequences need a positive mean")
    if n_max < n_min or n_min < 1:
        raise DomainError("need 1 <= n_min <= n_max")
    for c in columns:
        if c not in COLUMNS:
            raise DomainError(f"unknown column {c!r}; choose from {', '.join(COLUMNS)}")
    lz = _Lazy(f)
    ns = list(range(n_min, n_max + 1))
    table = SequenceTable(ns)
    for c in columns:
        table.columns[c] = [_column(c, lz, n) for n in ns]
    return table


def monotone_links(
    name: str,
    values,
    n_values,
    direction: str = "decreasing",
    tol: Tolerances = DEFAULT_TOL,
) -> list[CheckResult]:
    """One check per consecutive pair: s(n) <= s(n-1) (or >= when increasing)."""
    if direction not in ("decreasing", "increasing"):
        raise DomainError(f"direction must be 'increasing' or 'decreasing', not {direction!r}")
    out = []
    for k in range(1, len(values)):
        n, prev = n_values[k], n_values[k - 1]
        if direction == "decreasing":
            label = f"{name}({n}) <= {name}({prev})"
            out.append(check_leq(label, values[k], values[k - 1], tol.eps_ineq))
        else:
            label = f"{name}({n}) >= {name}({prev})"
            out.append(check_geq(label, values[k], values[k - 1], tol.eps_ineq))
    return out
