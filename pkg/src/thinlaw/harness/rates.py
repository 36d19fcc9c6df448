"""Log-log rate estimates and the large-n convergence checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..errors import DegenerateSequence, DomainError, ZeroMean
from ..info import chi_squared, d_poisson, entropy, scaled_fisher, total_variation
from ..pmf import DEFAULT_TOL, Pmf, Tolerances, linf, poisson
from ..results import CheckResult, check_leq
from ..transforms import law_of_thin_numbers, size_bias, thin

__all__ = ["RateEstimate", "check_tv_rate", "convergence_suite", "estimate_rate", "log_log_slope"]

# Values this small are rounding noise relative to O(1) pmf entries.
ROUNDING_LEVEL = 1e-13


@dataclass(frozen=True)
class RateEstimate:
    """Least-squares log-log slopes over ``n_values``.

    ``chi2`` is the sequence chi^2(T_{1/n} S f, T_{1/n} f); ``fisher_chain``
    holds the per-n checks d(n) <= K(L_n) <= K(T_{1/n} f).
    """

    n_values: tuple
    slope: float
    r2: float
    chi2_slope: float
    chi2_r2: float
    fisher_chain: tuple


def log_log_slope(n_values, values) -> tuple[float, float]:
    """Slope and r^2 of log(values) regressed on log(n)."""
    values = np.asarray(values, dtype=float)
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise DegenerateSequence("log-log fit needs finite positive values")
    fit = stats.linregress(np.log(np.asarray(n_values, dtype=float)), np.log(values))
    return float(fit.slope), float(fit.rvalue**2)


def _range(n_range):
    lo, hi = n_range
    if lo < 1 or hi <= lo:
        raise DomainError("need 1 <= n_lo < n_hi")
    return list(range(lo, hi + 1))


def estimate_rate(f: Pmf, n_range=(16, 128), tol: Tolerances = DEFAULT_TOL) -> RateEstimate:
    """Fit the decay rates of d(n) and of the thinned size-bias chi^2 sequence."""
    if not f.mean > 0:
        raise ZeroMean("rate estimate needs a positive mean")
    ns = _range(n_range)
    sf = size_bias(f)
    d, chi, chain = [], [], []
    for n in ns:
        law = law_of_thin_numbers(f, n)
        dn = d_poisson(law)
        if not dn > ROUNDING_LEVEL:
            raise DegenerateSequence(f"d({n}) = {dn:.3e} is at rounding level")
        d.append(dn)
        tf = thin(f, 1.0 / n)
        chi.append(chi_squared(thin(sf, 1.0 / n), tf))
        k_law, k_thin = scaled_fisher(law), scaled_fisher(tf)
        chain.append(check_leq(f"d({n}) <= K(L_{n})", dn, k_law, tol.eps_ineq))
        chain.append(check_leq(f"K(L_{n}) <= K(T_1/{n} f)", k_law, k_thin, tol.eps_ineq))
    slope, r2 = log_log_slope(ns, d)
    chi_slope, chi_r2 = log_log_slope(ns, chi)
    return RateEstimate(tuple(ns), slope, r2, chi_slope, chi_r2, tuple(chain))


def check_tv_rate(
    f: Pmf, n_range=(16, 128), max_slope: float = -0.85, tol: Tolerances = DEFAULT_TOL
) -> list[CheckResult]:
    """Pinsker V <= sqrt(2 d) at every n, and a log-log slope of V at most ``max_slope``.

    The slope check is skipped (noted) when V sits at rounding level, as for
    a truncated Poisson.
    """
    if not f.mean > 0:
        raise ZeroMean("TV rate needs a positive mean")
    ns = _range(n_range)
    po = poisson(f.mean)
    out, vs = [], []
    for n in ns:
        law = law_of_thin_numbers(f, n)
        v = total_variation(law, po)
        vs.append(v)
        out.append(check_leq(f"V({n}) <= sqrt(2 d({n}))", v, math.sqrt(2.0 * d_poisson(law)), tol.eps_ineq))
    if max(vs) <= 1e-10:
        out.append(CheckResult("TV slope", 0.0, max_slope, 0.0, True, note="skipped: V at rounding level"))
    else:
        slope, _ = log_log_slope(ns, vs)
        out.append(check_leq("TV slope", slope, max_slope, 0.0))
    return out


def convergence_suite(f: Pmf, n_max: int = 100, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """Pointwise, entropy and divergence gaps to po(lambda) at n = n_max.

    Thresholds scale with the first-order correction (sigma^2 - lambda)/n:
    sup gap <= max(10/n^2, |sigma^2 - lambda|/n),
    |h(n) - H(po)| <= max(1e-3, log 2 |sigma^2 - lambda| / n), d(n) <= 1e-3.
    """
    if not f.mean > 0:
        raise ZeroMean("convergence suite needs a positive mean")
    lam, var = f.mean, f.variance
    n = n_max
    po = poisson(lam)
    law = law_of_thin_numbers(f, n)
    excess = abs(var - lam) / n
    return [
        check_leq(f"sup|L_{n} - po|", linf(law, po), max(10.0 / n**2, excess), 0.0),
        check_leq(f"|h({n}) - H(po)|", abs(entropy(law) - entropy(po)), max(1e-3, math.log(2) * excess), 0.0),
        check_leq(f"d({n})", d_poisson(law), 1e-3, 0.0),
    ]
