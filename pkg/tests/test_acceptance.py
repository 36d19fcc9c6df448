"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test records a one-line verdict that is printed in the terminal
summary under "acceptance criteria".
"""

import math
import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

import oracle
from exprgen import expressions
from thinlaw import (
    PreconditionFailed,
    binomial,
    bernoulli,
    convolve,
    entropy,
    from_weights,
    is_log_concave,
    is_ulc,
    law_of_thin_numbers,
    linf,
    poisson,
    size_bias,
    thin,
)
from thinlaw.cli.expr import format_expr, parse
from thinlaw.cli.main import main
from thinlaw.harness import (
    EQUIDISPERSED,
    SEED,
    builtin_corpus,
    check_bounds,
    check_cx_chain,
    check_cx_thinning,
    check_debruijn,
    check_hn_monotone,
    check_hoeffding_chain,
    check_key_lemma,
    check_leave_one_out,
    check_log_sobolev,
    check_mix3,
    check_mixture_identity,
    check_rulc_bound,
    check_sequence_monotone,
    check_spread_pairs,
    check_tv_rate,
    check_ulc_two_point,
    classify,
    complete_monotonicity,
    conjecture_sequence,
    cx_pairs,
    estimate_rate,
    monotone_links,
    random_triples,
    schur_grid,
    sequences,
    two_point_pmf,
)

CORPUS = builtin_corpus()
EPS = 1e-9


def failures(results):
    return [r for r in results if not r.passed]


def worst_slack(results):
    return min((r.slack for r in results), default=math.inf)


def test_identity_suite(criterion):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 30))
        p, a, b = rng.uniform(0, 1, size=3)
        lam = float(rng.uniform(0.1, 5.0))
        f = from_weights(rng.uniform(0.01, 1.0, size=int(rng.integers(1, 9))))
        g = from_weights(rng.uniform(0.01, 1.0, size=int(rng.integers(1, 9))))
        po = poisson(lam)
        gaps = [
            linf(thin(binomial(n, p), a), binomial(n, a * p)),
            linf(thin(po, a), poisson(a * lam)),
            linf(size_bias(binomial(n, p)), binomial(n - 1, p)) if p > 0 else 0.0,
            linf(size_bias(po), po),
            linf(thin(thin(f, a), b), thin(f, a * b)),
            linf(thin(convolve(f, g), a), convolve(thin(f, a), thin(g, a))),
            linf(size_bias(thin(f, a)), thin(size_bias(f), a)) if a > 0 and f.mean > 0 else 0.0,
        ]
        worst = max(worst, max(gaps))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 5
    criterion(1, "identity suite", ok, f"max sup-gap {worst:.2e} over 50 cases x 7 identities, {elapsed:.2f}s")
    assert ok


def test_reference_table(criterion):
    start = time.perf_counter()
    f = binomial(2, 0.5)
    t = sequences(f, 10)
    links = []
    for c in ("d", "t", "r"):
        links += monotone_links(c, t[c], t.n_values, "decreasing")
    links += monotone_links("h", t["h"], t.n_values, "increasing")
    w = f.weights.tolist()
    d1, h1 = float(oracle.d_poisson(w)), float(oracle.entropy(w))
    elapsed = time.perf_counter() - start
    ok = (
        not failures(links)
        and worst_slack(links) >= -EPS
        and abs(t["d"][0] - d1) <= 1e-6
        and abs(t["h"][0] - h1) <= 1e-6
        and abs(d1 - 0.1335661) <= 1e-6
        and abs(h1 - 1.0397208) <= 1e-6
        and elapsed < 1
    )
    criterion(
        2,
        "bin(2,0.5) reference table",
        ok,
        f"{len(links)} links, worst slack {worst_slack(links):.2e}; d(1)={t['d'][0]:.7f} h(1)={t['h'][0]:.7f}; {elapsed:.2f}s",
    )
    assert ok


def test_monotonicity_at_scale(criterion):
    start = time.perf_counter()
    results = []
    for e in CORPUS:
        results += check_sequence_monotone(e.pmf, 50, ("d", "t", "r"))
        results += check_hn_monotone(e.pmf, 50)
        results += check_mix3(e.pmf, 50)
    elapsed = time.perf_counter() - start
    bad = failures(results)
    ok = not bad and elapsed < 60
    criterion(3, "monotonicity to n=50", ok, f"{len(results)} links, {len(bad)} violations, {elapsed:.2f}s")
    assert ok, bad[:3]


def test_debruijn(criterion):
    chosen = [CORPUS[i] for i in (0, 2, 4, 5, 10)]
    results = [check_debruijn(e.pmf, a, 1e-4) for e in chosen for a in (0.1, 0.25, 0.5, 0.75, 0.9)]
    worst = max(abs(r.lhs - r.rhs) for r in results)
    ok = worst <= 1e-6
    criterion(4, "de Bruijn identity", ok, f"max |lhs-rhs| {worst:.2e} over {len(results)} cases ({', '.join(e.label for e in chosen[:4])}, ...)")
    assert ok


def _key_pairs(f, n_max):
    """Convex-ordered pairs from the thinned-sum chain plus a two-point minimum."""
    pairs = [(two_point_pmf(f.mean), f)]
    kind = classify(f)
    laws = [law_of_thin_numbers(f, n) for n in range(1, n_max + 1)]
    for prev, cur in zip(laws, laws[1:]):
        if kind == "ulc":
            pairs.append((prev, cur))
        elif kind == "reverse":
            pairs.append((cur, prev))
    return pairs


def test_inequality_suite(criterion):
    results, skipped = [], 0
    m = len(CORPUS)
    for i, e in enumerate(CORPUS):
        f = e.pmf
        for n in range(1, 21):
            results += check_log_sobolev(law_of_thin_numbers(f, n))
        results += check_bounds(f, 20)
        for k in range(3, 6):
            results += check_leave_one_out([CORPUS[(i + j) % m].pmf for j in range(k)])
        for n in range(3, 21, 4):
            results += check_leave_one_out([f] * n)
        for a, b in _key_pairs(f, 20):
            try:
                results += check_key_lemma(a, b)
            except PreconditionFailed:
                skipped += 1
        if is_ulc(f):
            for n in range(1, 21):
                results.append(check_rulc_bound(f, n))
                results += check_ulc_two_point(f, n)
    bad = failures(results)
    ok = not bad
    criterion(5, "inequality suite", ok, f"{len(results)} checks, {len(bad)} violations, {skipped} pairs outside preconditions")
    assert ok, bad[:3]


def test_mixture_identity(criterion):
    results = [check_mixture_identity(t, 1e-12) for t in random_triples(20, SEED)]
    worst = max(r.lhs for r in results)
    ok = not failures(results)
    criterion(6, "mixture identity", ok, f"max sup-gap {worst:.2e} over 20 triples")
    assert ok


def test_order_suite(criterion):
    results = []
    for lam in (0.5, 1.0, 2.0):
        results += check_hoeffding_chain(lam, 10)
    chains = 0
    for e in CORPUS:
        if classify(e.pmf) in ("ulc", "reverse"):
            results += check_cx_chain(e.pmf, 20)
            chains += 1
    results += check_cx_thinning(cx_pairs(30, SEED))
    schur = 0
    for e in CORPUS:
        if is_ulc(e.pmf) and e.pmf.support_max <= 40:
            grid = schur_grid(e.pmf, (2, 3), 0.125)
            schur += len(grid)
            results += grid
            results += check_spread_pairs(e.pmf, 0.5, (0.0, 0.125, 0.25, 0.375, 0.5))
    bad = failures(results)
    ok = not bad
    criterion(7, "order suite", ok, f"{len(results)} checks ({chains} cx chains, {schur} Schur pairs), {len(bad)} violations")
    assert ok, bad[:3]


def test_rates(criterion):
    start = time.perf_counter()
    lines, ok, excluded = [], True, []
    members = [e for e in CORPUS if is_ulc(e.pmf) or e.pmf.deficit == 0]
    for e in members + [EQUIDISPERSED]:
        f = e.pmf
        if f.deficit > 0 and sequences(f, 16, columns=("d",), n_min=16)["d"][0] < 1e-13:
            excluded.append(e.label)
            continue
        est = estimate_rate(f, (16, 128))
        tv = check_tv_rate(f, (16, 128), -0.85)
        equi = math.isclose(f.mean, f.variance, abs_tol=1e-9)
        chi_target = -2.0 if equi else -1.0
        member_ok = (
            (equi or abs(est.slope + 2.0) <= 0.15)
            and abs(est.chi2_slope - chi_target) <= 0.15
            and not failures(tv)
            and not failures(est.fisher_chain)
        )
        ok &= member_ok
        lines.append(f"{e.label}: d {est.slope:.3f} chi2 {est.chi2_slope:.3f}{'' if member_ok else ' FAIL'}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    detail = "; ".join(lines) + f"; excluded (d identically 0): {', '.join(excluded)}; {elapsed:.1f}s"
    criterion(8, "rates", ok, detail)
    assert ok, detail


def test_convergence(criterion):
    worst_d, worst_h, offenders = 0.0, 0.0, []
    for e in CORPUS:
        f = e.pmf
        if f.mean > 2 + 1e-9:
            continue
        law = law_of_thin_numbers(f, 100)
        d = sequences(f, 100, columns=("d",), n_min=100)["d"][0]
        gap = abs(entropy(law) - float(oracle.poisson_entropy(f.mean)))
        worst_d, worst_h = max(worst_d, d), max(worst_h, gap)
        if not (d < 1e-3 and gap < 1e-3):
            offenders.append(f"{e.label} (|dh|={gap:.2e})")
    ok = not offenders
    criterion(
        9,
        "convergence at n=100",
        ok,
        f"max d(100) {worst_d:.2e}, max |h(100)-H(po)| {worst_h:.2e}; over 1e-3: {', '.join(offenders) or 'none'}",
    )
    assert ok, offenders


def test_conjecture_explorer(criterion):
    violations = []
    for family in ("bin", "nb"):
        for lam in (0.5, 1.0, 2.0):
            ns, s = conjecture_sequence(family, lam, 30)
            table = complete_monotonicity(s, 4, ns)
            violations += [(family, lam) + v for v in table.violations()]
    ok = not violations
    criterion(10, "conjecture explorer", ok, f"{len(violations)} sign violations above the noise floor (orders <= 4, n <= 30)")
    assert ok, violations[:3]


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "thinlaw", *argv], capture_output=True)


def test_cli_contract(criterion):
    exprs = expressions(200)
    round_trip = all(parse(format_expr(e)) == e for e in exprs)
    a, b = _cli("sweep", "--figure1"), _cli("sweep", "--figure1")
    identical = a.returncode == 0 and a.stdout == b.stdout and a.stdout.startswith(b"n,d,t,r,h\n")
    with tempfile.TemporaryDirectory() as tmp:
        bad = Path(tmp) / "bad.txt"
        bad.write_text("pmf(1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1)\n")
        codes = (
            _cli("verify", "--suite", "thinning", "--quiet").returncode,
            _cli("verify", "--suite", "convergence", "--corpus", str(bad), "--quiet").returncode,
            _cli("eval", "bin(2)").returncode,
        )
    ok = round_trip and identical and codes == (0, 1, 2)
    criterion(11, "CLI contract", ok, f"round-trip 200/200={round_trip}, identical CSV={identical}, exit codes {codes}")
    assert ok
