"""Executable checks for the monotonicity theorems, lemmas and bounds.

Each function returns :class:`~thinlaw.results.CheckResult` records.
Infinite right-hand sides pass vacuously; an infinite left-hand side
against a finite bound fails.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import DomainError, PreconditionFailed, ZeroMean
from ..info import (
    MAX_DEFICIT,
    chi_squared,
    d_poisson,
    entropy,
    l_n,
    poisson_divergence,
    relative_entropy,
    total_variation,
)
from ..orders import (
    ConvexTestFn,
    OrderReport,
    is_log_concave,
    is_ulc,
    leq_cx,
    leq_lc_poisson,
    majorizes,
    mixed_binomial_sum,
    poisson_leq_lc,
)
from ..pmf import DEFAULT_TOL, Pmf, Tolerances, binomial, linf, poisson
from ..results import CheckResult, check_close, check_geq, check_leq
from ..transforms import (
    convolve,
    convolve_all,
    law_of_thin_numbers,
    law_of_thin_numbers_direct,
    self_convolve,
    size_bias,
    thin,
)
from .sequences import monotone_links, sequences

__all__ = [
    "check_bounds",
    "check_cx_thinning",
    "check_hoeffding_chain",
    "check_spread_pairs",
    "check_ulc_two_point",
    "probability_grid",
    "schur_grid",
    "check_convolution_lemma",
    "check_cx_chain",
    "check_debruijn",
    "check_entropy_monotone",
    "check_hn_monotone",
    "check_key_lemma",
    "check_leave_one_out",
    "check_log_sobolev",
    "check_mix3",
    "check_mixture_identity",
    "check_route_equivalence",
    "check_rulc_bound",
    "check_sequence_monotone",
    "check_thinning_lemma",
    "order_check",
    "two_point_pmf",
]


def _need_mean(f: Pmf, what: str):
    if not f.mean > 0:
        raise ZeroMean(f"{what} needs a positive mean")


def order_check(name: str, report: OrderReport, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Wrap an order verdict; ``slack`` is the report's margin."""
    note = report.reason
    if report.witness is not None:
        note = f"{note} at {report.witness}"
    return CheckResult(name, -report.margin, 0.0, report.margin, report.holds, tol.eps_ineq, note)


def check_thinning_lemma(f: Pmf, alphas, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """D(T_alpha f) <= alpha D(f) for each alpha."""
    _need_mean(f, "thinning lemma")
    d = d_poisson(f)
    out = []
    for a in alphas:
        lhs = 0.0 if a == 0 else d_poisson(thin(f, a))
        out.append(check_leq(f"D(T_{a:g} f) <= {a:g} D(f)", lhs, a * d, tol.eps_ineq))
    return out


def check_convolution_lemma(f: Pmf, n_max: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """r(n) = D(f^{*n}) / n is nonincreasing."""
    _need_mean(f, "convolution lemma")
    t = sequences(f, n_max, columns=("r",))
    return monotone_links("r", t["r"], t.n_values, "decreasing", tol)


def check_sequence_monotone(
    f: Pmf, n_max: int, columns=("d", "t", "r"), tol: Tolerances = DEFAULT_TOL
) -> list[CheckResult]:
    """Nonincreasing d (relative entropy), t (thinning lemma), r (convolution lemma)."""
    _need_mean(f, "monotonicity")
    t = sequences(f, n_max, columns=columns)
    out = []
    for c in columns:
        out.extend(monotone_links(c, t[c], t.n_values, "decreasing", tol))
    return out


def check_route_equivalence(f: Pmf, ns, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """(T_{1/n} f)^{*n} and T_{1/n}(f^{*n}) agree pointwise within eps_eq."""
    out = []
    for n in ns:
        gap = linf(law_of_thin_numbers(f, n), law_of_thin_numbers_direct(f, n))
        out.append(check_leq(f"route gap n={n}", gap, tol.eps_eq, 0.0))
    return out


def check_debruijn(f: Pmf, alpha: float, step: float, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """dD(T_alpha f)/dalpha = lambda D(T_alpha S(f) | T_alpha f), by central difference.

    Passes when the two sides agree within ``max(1e-6, step^2 * (1 + |rhs|))``.
    """
    if not (0.0 < alpha - step and alpha + step < 1.0):
        raise DomainError("need 0 < alpha - step and alpha + step < 1")
    _need_mean(f, "de Bruijn identity")
    lhs = (d_poisson(thin(f, alpha + step)) - d_poisson(thin(f, alpha - step))) / (2.0 * step)
    rhs = f.mean * relative_entropy(thin(size_bias(f), alpha), thin(f, alpha))
    bound = max(1e-6, step * step * (1.0 + abs(rhs)))
    return check_close(f"de Bruijn alpha={alpha:g}", lhs, rhs, bound)


def check_log_sobolev(f: Pmf, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """D(f) <= lambda D(S f | f) and D(f) <= lambda chi^2(S f, f), plus the middle link."""
    _need_mean(f, "log-Sobolev check")
    lam = f.mean
    sf = size_bias(f)
    d = d_poisson(f)
    ent = lam * relative_entropy(sf, f)
    chi = lam * chi_squared(sf, f)
    return [
        check_leq("D(f) <= lam D(Sf|f)", d, ent, tol.eps_ineq),
        check_leq("D(f) <= lam chi2(Sf,f)", d, chi, tol.eps_ineq),
        check_leq("lam D(Sf|f) <= lam chi2(Sf,f)", ent, chi, tol.eps_ineq),
    ]


def _leave_one_out(qs):
    return [convolve_all(qs[:i] + qs[i + 1 :]) for i in range(len(qs))]


def _betas(qs):
    lams = np.array([q.mean for q in qs])
    return (1.0 - lams / lams.sum()) / (len(qs) - 1)


def check_mixture_identity(qs, tol: float = 1e-10) -> CheckResult:
    """S(q) = sum_i beta_i q_i * S(q^(-i)),  beta_i = (1 - lambda_i / sum lambda) / (n - 1).

    ``lhs`` is the sup-norm gap between the two pmfs; the betas are in
    ``details``.
    """
    qs = list(qs)
    if len(qs) < 2:
        raise DomainError("mixture identity needs at least two pmfs")
    for q in qs:
        _need_mean(q, "mixture identity")
    betas = _betas(qs)
    lhs = size_bias(convolve_all(qs))
    n = len(lhs)
    rhs = np.zeros(n)
    for b, q, loo in zip(betas, qs, _leave_one_out(qs)):
        term = convolve(q, size_bias(loo)).weights
        rhs[: term.size] += b * term
    left = np.zeros(n)
    left[: len(lhs)] = lhs.weights
    gap = float(np.max(np.abs(left - rhs[:n]))) if rhs.size == n else math.inf
    return check_leq("mixture identity", gap, tol, 0.0, details={"betas": betas.tolist()})


def check_leave_one_out(qs, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """The two leave-one-out divergence inequalities and the strengthened data processing bound."""
    qs = list(qs)
    if len(qs) < 3:
        raise DomainError("leave-one-out checks need at least three pmfs")
    for q in qs:
        _need_mean(q, "leave-one-out checks")
    betas = _betas(qs)
    q = convolve_all(qs)
    loos = _leave_one_out(qs)
    sq = size_bias(q)
    sloos = [size_bias(g) for g in loos]

    def weighted(terms):
        if any(math.isinf(t) for t in terms):
            return math.inf
        return float(np.dot(betas, terms))

    qsq_l = relative_entropy(q, sq)
    qsq_r = weighted([relative_entropy(g, s) for g, s in zip(loos, sloos)])
    sqq_l = relative_entropy(sq, q)
    sqq_r = weighted([relative_entropy(s, g) for g, s in zip(loos, sloos)])
    strong_l = d_poisson(q)
    strong_r = sum(d_poisson(g) for g in loos) / (len(qs) - 1)

    def note(lhs, rhs):
        if math.isinf(rhs) and not math.isinf(lhs):
            return "reported: infinite rhs against finite lhs"
        return ""

    return [
        check_leq("D(q|Sq) <= sum beta D(q-i|Sq-i)", qsq_l, qsq_r, tol.eps_ineq, note(qsq_l, qsq_r)),
        check_leq("D(Sq|q) <= sum beta D(Sq-i|q-i)", sqq_l, sqq_r, tol.eps_ineq, note(sqq_l, sqq_r)),
        check_leq("D(q) <= sum D(q-i)/(n-1)", strong_l, strong_r, tol.eps_ineq),
    ]


def check_hn_monotone(f: Pmf, n_max: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """h_n = D(L_n | S L_n) and h~_n = D(S L_n | L_n) are nonincreasing.

    For finite-support f every h_n is infinite (S shifts the support down
    by one), so those links pass vacuously.
    """
    _need_mean(f, "h_n monotonicity")
    t = sequences(f, n_max, columns=("h_n", "h_tilde"))
    return monotone_links("h_n", t["h_n"], t.n_values, "decreasing", tol) + monotone_links(
        "h_tilde", t["h_tilde"], t.n_values, "decreasing", tol
    )


def check_mix3(f: Pmf, n_max: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """D(S(f^{*n}) | f^{*n}) and D(f^{*n} | S(f^{*n})) are nonincreasing."""
    _need_mean(f, "convolution divergence monotonicity")
    ns = list(range(1, n_max + 1))
    fwd, rev = [], []
    for n in ns:
        g = self_convolve(f, n)
        s = size_bias(g)
        fwd.append(relative_entropy(s, g))
        rev.append(relative_entropy(g, s))
    return monotone_links("D(Sf*n|f*n)", fwd, ns, "decreasing", tol) + monotone_links(
        "D(f*n|Sf*n)", rev, ns, "decreasing", tol
    )


def check_bounds(f: Pmf, n_max: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """Per n: d(n) <= lam/n + l_n, d(n) <= lam/n + sigma^2/(n lam), Pinsker, and l_n decreasing."""
    _need_mean(f, "convergence bounds")
    lam, var = f.mean, f.variance
    po = poisson(lam)
    out = []
    ln_prev = None
    for n in range(1, n_max + 1):
        g = law_of_thin_numbers(f, n)
        d = d_poisson(g)
        ln = l_n(f, n)
        out.append(check_leq(f"d({n}) <= lam/n + l_n", d, lam / n + ln, tol.eps_ineq))
        out.append(check_leq(f"d({n}) <= lam/n + var/(n lam)", d, lam / n + var / (n * lam), tol.eps_ineq))
        v = total_variation(g, po)
        out.append(check_leq(f"V({n})^2 <= 2 d({n})", v * v, 2.0 * d, tol.eps_ineq))
        if ln_prev is not None:
            out.append(check_leq(f"l_{n} <= l_{n - 1}", ln, ln_prev, tol.eps_ineq))
        ln_prev = ln
    return out


def check_entropy_monotone(
    f: Pmf, n_max: int, direction: str, tol: Tolerances = DEFAULT_TOL
) -> list[CheckResult]:
    """h(n) = H(T_{1/n}(f^{*n})) monotone, sandwiched against H(po(lambda)).

    ``increasing`` needs f ULC (then every h(n) <= H(po)); ``decreasing``
    needs f log-concave with po(lambda) <=lc f (then every h(n) >= H(po)).
    """
    _need_mean(f, "entropy monotonicity")
    lam = f.mean
    if direction == "increasing":
        report = is_ulc(f, tol)
        if not report:
            raise PreconditionFailed("increasing entropy needs an ULC pmf", report)
    elif direction == "decreasing":
        report = is_log_concave(f, tol)
        if report:
            report = poisson_leq_lc(lam, f, tol)
        if not report:
            raise PreconditionFailed("decreasing entropy needs log-concave f with po <=lc f", report)
    else:
        raise DomainError(f"unknown direction {direction!r}")
    t = sequences(f, n_max, columns=("h",))
    out = monotone_links("h", t["h"], t.n_values, direction, tol)
    h_po = entropy(poisson(lam))
    for n, h in zip(t.n_values, t["h"]):
        if direction == "increasing":
            out.append(check_leq(f"h({n}) <= H(po)", h, h_po, tol.eps_ineq))
        else:
            out.append(check_geq(f"h({n}) >= H(po)", h, h_po, tol.eps_ineq))
    return out


def check_cx_chain(f: Pmf, n_max: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """Convex-order chain of L_n = T_{1/n}(f^{*n}) and its lc relation to po(lambda).

    ULC f: L_{n-1} <=cx L_n and L_n <=lc po.  Reverse class (log-concave,
    po <=lc f): L_n <=cx L_{n-1} and po <=lc L_n.
    """
    _need_mean(f, "convex-order chain")
    lam = f.mean
    if is_ulc(f, tol):
        forward = True
    elif is_log_concave(f, tol) and poisson_leq_lc(lam, f, tol):
        forward = False
    else:
        raise PreconditionFailed("cx chain needs ULC f or log-concave f with po <=lc f")
    laws = [law_of_thin_numbers(f, n) for n in range(1, n_max + 1)]
    out = []
    for n, g in enumerate(laws, start=1):
        if forward:
            out.append(order_check(f"L_{n} <=lc po", leq_lc_poisson(g, lam, tol), tol))
        else:
            out.append(order_check(f"po <=lc L_{n}", poisson_leq_lc(lam, g, tol), tol))
        if n >= 2:
            prev = laws[n - 2]
            if forward:
                out.append(order_check(f"L_{n - 1} <=cx L_{n}", leq_cx(prev, g, tol), tol))
            else:
                out.append(order_check(f"L_{n} <=cx L_{n - 1}", leq_cx(g, prev, tol), tol))
    return out


def _floor_frac(x: float):
    x = round(x, 12)
    fl = math.floor(x)
    return fl, x - fl


def check_rulc_bound(f: Pmf, n: int, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """d(n) <= {n lam} D(bi(floor+1, 1/n) | po) + (1 - {n lam}) D(bi(floor, 1/n) | po)."""
    report = is_ulc(f, tol)
    if not report:
        raise PreconditionFailed("the ULC rate bound needs an ULC pmf", report)
    _need_mean(f, "ULC rate bound")
    lam = f.mean
    fl, fr = _floor_frac(n * lam)
    rhs = (1.0 - fr) * poisson_divergence(binomial(fl, 1.0 / n), lam)
    if fr > 0:
        rhs += fr * poisson_divergence(binomial(fl + 1, 1.0 / n), lam)
    lhs = d_poisson(law_of_thin_numbers(f, n))
    return check_leq(f"ULC bound n={n}", lhs, rhs, tol.eps_ineq)


def two_point_pmf(mean: float) -> Pmf:
    """Mass {mean} at floor(mean) + 1 and the rest at floor(mean)."""
    fl, fr = _floor_frac(mean)
    w = np.zeros(fl + 2)
    w[fl] = 1.0 - fr
    w[fl + 1] = fr
    return Pmf(w)


def _common_truncation(f: Pmf, g: Pmf) -> Pmf:
    """Cut f to supp(g) when g is truncated and the overhang is truncation-sized.

    Both stand for full-support pmfs; without this the few tail entries of f
    beyond g's cut make D(f|g) spuriously infinite.
    """
    if g.deficit > 0 and len(f) > len(g):
        tail = float(np.sum(f.weights[len(g) :]))
        if tail <= MAX_DEFICIT:
            return Pmf(f.weights[: len(g)], f.deficit + tail)
    return f


def check_key_lemma(f: Pmf, g: Pmf, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """For f <=cx g: H(f) + D(f|g) <= H(g) when g is log-concave,
    D(f) >= D(g) + D(f|g) when g is ULC."""
    f = _common_truncation(f, g)
    report = leq_cx(f, g, tol)
    if not report:
        raise PreconditionFailed("key lemma needs f <=cx g", report)
    ulc = bool(is_ulc(g, tol))
    lc = ulc or bool(is_log_concave(g, tol))
    if not lc:
        raise PreconditionFailed("key lemma needs g log-concave (or ULC)")
    dfg = relative_entropy(f, g)
    out = [check_leq("H(f) + D(f|g) <= H(g)", entropy(f) + dfg, entropy(g), tol.eps_ineq)]
    if ulc:
        out.append(check_geq("D(f) >= D(g) + D(f|g)", d_poisson(f), d_poisson(g) + dfg, tol.eps_ineq))
    return out


def check_hoeffding_chain(lam: float, n_max: int = 10, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """bi(n, lam/n) <=cx bi(n+1, lam/(n+1)) for n = ceil(lam)..n_max."""
    if not lam > 0:
        raise DomainError("lam must be positive")
    out = []
    for n in range(max(1, math.ceil(lam)), n_max + 1):
        report = leq_cx(binomial(n, lam / n), binomial(n + 1, lam / (n + 1)), tol)
        out.append(order_check(f"bi({n},{lam:g}/{n}) <=cx bi({n + 1},{lam:g}/{n + 1})", report, tol))
    return out


def check_cx_thinning(pairs, alphas=(0.25, 0.5, 0.75), tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """f <=cx g implies T_alpha f <=cx T_alpha g."""
    out = []
    for k, (f, g) in enumerate(pairs):
        if not leq_cx(f, g, tol):
            raise PreconditionFailed(f"pair {k} is not convex ordered")
        for a in alphas:
            out.append(order_check(f"pair {k}: T_{a:g} f <=cx T_{a:g} g", leq_cx(thin(f, a), thin(g, a), tol), tol))
    return out


def check_spread_pairs(f: Pmf, p: float, deltas, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """For ULC f and d > d' >= 0: Z(p+d, p-d) <=cx Z(p+d', p-d') for two-term mixed binomial sums."""
    report = is_ulc(f, tol)
    if not report:
        raise PreconditionFailed("spread probe needs an ULC pmf", report)
    deltas = sorted(deltas)
    if deltas[0] < 0 or p - deltas[-1] < 0 or p + deltas[-1] > 1:
        raise DomainError("need 0 <= d and p +- d in [0, 1]")
    sums = {d: mixed_binomial_sum(f, (p + d, p - d)) for d in deltas}
    out = []
    for i, small in enumerate(deltas):
        for big in deltas[i + 1 :]:
            report = leq_cx(sums[big], sums[small], tol)
            out.append(order_check(f"spread {big:g} <=cx spread {small:g} at p={p:g}", report, tol))
    return out


def probability_grid(n: int, step: float = 0.125) -> list[tuple[float, ...]]:
    """Nonincreasing vectors in [0, 1]^n with entries on the grid."""
    m = round(1 / step)
    values = [k * step for k in range(m + 1)]
    return [tuple(sorted(c, reverse=True)) for c in itertools.combinations_with_replacement(values, n)]


def schur_grid(
    f: Pmf, ns=(2, 3), step: float = 0.125, tol: Tolerances = DEFAULT_TOL
) -> list[CheckResult]:
    """Schur concavity over every comparable grid pair, worst case over hinges and the square.

    One result per pair (p_a majorized by p_b, p_a != p_b).  The hinge family
    at every k up to the support maximum is the complete witness set for the
    convex-order conclusion; the square is added as an extra probe.
    """
    report = is_ulc(f, tol)
    if not report:
        raise PreconditionFailed("Schur probes need an ULC pmf", report)
    out = []
    for n in ns:
        grid = probability_grid(n, step)
        sums = {p: mixed_binomial_sum(f, p) for p in grid}
        fns = [ConvexTestFn.hinge(k) for k in range(n * f.support_max + 1)] + [ConvexTestFn.square()]
        values = {p: np.array([phi.expect(g) for phi in fns]) for p, g in sums.items()}
        for pa in grid:
            for pb in grid:
                if pa == pb or not majorizes(pb, pa):
                    continue
                gap = values[pa] - values[pb]
                worst = int(np.argmin(gap))
                out.append(
                    check_geq(
                        f"schur {pa} vs {pb} [{fns[worst]}]",
                        float(values[pa][worst]),
                        float(values[pb][worst]),
                        tol.eps_ineq,
                    )
                )
    return out


def check_ulc_two_point(f: Pmf, n: int, tol: Tolerances = DEFAULT_TOL) -> list[CheckResult]:
    """Convex-order steps behind the ULC rate bound.

    g = two-point law on floor(n lam), floor(n lam) + 1 with mean n lam;
    checks g <=cx f^{*n}, T_{1/n} g <=cx L_n, and the key inequality for
    the pair (T_{1/n} g, L_n).
    """
    report = is_ulc(f, tol)
    if not report:
        raise PreconditionFailed("two-point construction needs an ULC pmf", report)
    g = two_point_pmf(n * f.mean)
    fn = self_convolve(f, n)
    tg = thin(g, 1.0 / n)
    law = law_of_thin_numbers(f, n)
    out = [
        order_check(f"two-point <=cx f*{n}", leq_cx(g, fn, tol), tol),
        order_check(f"T two-point <=cx L_{n}", leq_cx(tg, law, tol), tol),
    ]
    out.extend(check_key_lemma(tg, law, tol))
    return out
