"""Named verification suites over a corpus, with deterministic record order."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..errors import ConsistencyError, DegenerateSequence, DomainError, PreconditionFailed
from ..orders import is_ulc
from ..pmf import DEFAULT_TOL, Tolerances, binomial
from ..results import CheckResult, check_leq
from . import checks, rates
from .corpus import SEED, CorpusEntry, classify, cx_pairs, random_triples

__all__ = ["SUITES", "SuiteRecord", "run_suite", "run_suites"]

GLOBAL = -1  # corpus index for checks that do not depend on the corpus

# Ranges used by the suites; sized for a full run in well under a minute.
THIN_ALPHAS = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)
DEBRUIJN_ALPHAS = (0.1, 0.25, 0.5, 0.75, 0.9)
DEBRUIJN_STEP = 1e-4
RATE_RANGE = (16, 128)
RATE_BAND = 0.15
SCHUR_MAX_SUPPORT = 40


@dataclass(frozen=True)
class SuiteRecord:
    """One line of a verification report; ``result`` is None for a skip."""

    suite: str
    index: int
    label: str
    result: CheckResult | None
    skip: str = ""

    @property
    def passed(self) -> bool:
        return self.result is not None and self.result.passed


def _neighbours(corpus, i, k):
    m = len(corpus)
    return [corpus[(i + j) % m].pmf for j in range(k)]


def _thinning(e, i, corpus, n_max, tol):
    return checks.check_thinning_lemma(e.pmf, THIN_ALPHAS, tol)


def _convolution(e, i, corpus, n_max, tol):
    return checks.check_sequence_monotone(e.pmf, n_max, ("d", "t", "r"), tol) + checks.check_route_equivalence(
        e.pmf, range(1, n_max + 1), tol
    )


def _debruijn(e, i, corpus, n_max, tol):
    return [checks.check_debruijn(e.pmf, a, DEBRUIJN_STEP, tol) for a in DEBRUIJN_ALPHAS]


def _logsobolev(e, i, corpus, n_max, tol):
    return checks.check_log_sobolev(e.pmf, tol)


def _mixture(e, i, corpus, n_max, tol):
    return [checks.check_mixture_identity(_neighbours(corpus, i, k), 1e-12) for k in (2, 3)]


def _leave_one_out(e, i, corpus, n_max, tol):
    return checks.check_leave_one_out(_neighbours(corpus, i, 3), tol)


def _hn(e, i, corpus, n_max, tol):
    return checks.check_hn_monotone(e.pmf, n_max, tol) + checks.check_mix3(e.pmf, n_max, tol)


def _entropy(e, i, corpus, n_max, tol):
    kind = classify(e.pmf)
    if kind == "neither":
        raise PreconditionFailed("neither ULC nor log-concave above the Poisson")
    return checks.check_entropy_monotone(e.pmf, n_max, "increasing" if kind == "ulc" else "decreasing", tol)


def _cx_chain(e, i, corpus, n_max, tol):
    return checks.check_cx_chain(e.pmf, n_max, tol)


def _rulc(e, i, corpus, n_max, tol):
    out = [checks.check_rulc_bound(e.pmf, n, tol) for n in range(1, n_max + 1)]
    for n in range(1, n_max + 1):
        out.extend(checks.check_ulc_two_point(e.pmf, n, tol))
    return out


def _rate(e, i, corpus, n_max, tol):
    f = e.pmf
    est = rates.estimate_rate(f, RATE_RANGE, tol)
    out = list(est.fisher_chain)
    out.append(_within("d slope", est.slope, -2.0, RATE_BAND))
    equi = math.isclose(f.mean, f.variance, rel_tol=0, abs_tol=1e-9)
    out.append(_within("chi2 slope", est.chi2_slope, -2.0 if equi else -1.0, RATE_BAND))
    return out


def _within(name, value, target, band):
    return check_leq(f"|{name} - ({target:g})|", abs(value - target), band, 0.0, note=f"slope {value:.4f}")


def _tv(e, i, corpus, n_max, tol):
    return rates.check_tv_rate(e.pmf, RATE_RANGE, tol=tol)


def _key_lemma(e, i, corpus, n_max, tol):
    f = e.pmf
    reflexive = checks.check_key_lemma(f, f, tol)
    return reflexive + checks.check_key_lemma(checks.two_point_pmf(f.mean), f, tol)


def _convergence(e, i, corpus, n_max, tol):
    return rates.convergence_suite(e.pmf, 100, tol)


def _schur(e, i, corpus, n_max, tol):
    report = is_ulc(e.pmf, tol)
    if not report:
        raise PreconditionFailed("Schur probes need an ULC pmf", report)
    if e.pmf.support_max > SCHUR_MAX_SUPPORT:
        raise PreconditionFailed(f"support above {SCHUR_MAX_SUPPORT}")
    return checks.schur_grid(e.pmf, (2, 3), 0.125, tol)


def _global_mixture(tol):
    return [checks.check_mixture_identity(t, 1e-12) for t in random_triples(20, SEED)]


def _global_cx_chain(tol):
    out = []
    for lam in (0.5, 1.0, 2.0):
        out.extend(checks.check_hoeffding_chain(lam, 10, tol))
    return out + checks.check_cx_thinning(cx_pairs(30, SEED), tol=tol)


def _global_schur(tol):
    out = []
    for p in (0.3, 0.5):
        out.extend(checks.check_spread_pairs(binomial(2, 0.5), p, (0.0, 0.1, 0.2, 0.3), tol))
    return out


@dataclass(frozen=True)
class Suite:
    per_entry: Callable
    global_checks: Callable | None = None


SUITES: dict[str, Suite] = {
    "thinning": Suite(_thinning),
    "convolution": Suite(_convolution),
    "debruijn": Suite(_debruijn),
    "logsobolev": Suite(_logsobolev),
    "mixture": Suite(_mixture, _global_mixture),
    "leave_one_out": Suite(_leave_one_out),
    "hn": Suite(_hn),
    "entropy": Suite(_entropy),
    "cx_chain": Suite(_cx_chain, _global_cx_chain),
    "rulc": Suite(_rulc),
    "rate": Suite(_rate),
    "tv": Suite(_tv),
    "key_lemma": Suite(_key_lemma),
    "convergence": Suite(_convergence),
    "schur": Suite(_schur, _global_schur),
}


def run_suite(
    name: str,
    corpus: list[CorpusEntry],
    n_max: int = 10,
    include_global: bool = True,
    tol: Tolerances = DEFAULT_TOL,
) -> list[SuiteRecord]:
    """Run one suite; precondition failures become skip records."""
    suite = SUITES[name]
    records = []
    if include_global and suite.global_checks is not None:
        records.extend(SuiteRecord(name, GLOBAL, "(builtin grid)", r) for r in suite.global_checks(tol))
    for i, entry in enumerate(corpus):
        try:
            results = suite.per_entry(entry, i, corpus, n_max, tol)
        except (PreconditionFailed, DegenerateSequence, DomainError) as exc:
            records.append(SuiteRecord(name, i, entry.label, None, f"{type(exc).__name__}: {exc}"))
            continue
        except ConsistencyError as exc:
            failed = CheckResult("numerical consistency", math.nan, math.nan, -math.inf, False, note=str(exc))
            records.append(SuiteRecord(name, i, entry.label, failed))
            continue
        records.extend(SuiteRecord(name, i, entry.label, r) for r in results)
    return records


def run_suites(names, corpus, n_max: int = 10, include_global: bool = True, tol: Tolerances = DEFAULT_TOL):
    """Records for several suites, ordered by suite name then corpus index."""
    records = []
    for name in sorted(set(names)):
        records.extend(run_suite(name, corpus, n_max, include_global, tol))
    return sorted(records, key=lambda r: (r.suite, r.index))
