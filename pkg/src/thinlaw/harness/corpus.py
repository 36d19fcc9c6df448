"""Built-in corpus of pmfs and seeded generators for randomized checks.

Every label is a valid CLI distribution expression that evaluates to the
same pmf, so a corpus can be written to a file and read back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..orders import is_log_concave, is_ulc, leq_cx, poisson_leq_lc
from ..pmf import (
    Pmf,
    bernoulli,
    binomial,
    from_weights,
    geometric,
    negative_binomial,
    poisson,
    uniform,
)
from ..transforms import convolve_all

__all__ = [
    "CorpusEntry",
    "EQUIDISPERSED",
    "builtin_corpus",
    "classify",
    "cx_pairs",
    "random_pmf",
    "random_triples",
]

SEED = 20090  # all randomized corpus members and grids derive from this


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    pmf: Pmf


def _random_ulc(rng) -> CorpusEntry:
    # Sums of independent Bernoullis are ULC.
    ps = [float(x) for x in np.round(rng.uniform(0.1, 0.9, size=4), 2)]
    label = "bern({})".format(ps[0])
    for p in ps[1:]:
        label = f"conv({label},bern({p}))"
    return CorpusEntry(label, convolve_all(bernoulli(p) for p in ps))


def _random_non_ulc(rng) -> CorpusEntry:
    while True:
        w = [int(x) for x in rng.integers(1, 10, size=6)]
        f = from_weights(w)
        if not is_ulc(f) and not is_log_concave(f):
            return CorpusEntry("pmf({})".format(",".join(map(str, w))), f)


def builtin_corpus() -> list[CorpusEntry]:
    """The default corpus: ULC, reverse-ULC and unclassified pmfs."""
    rng = np.random.default_rng(SEED)
    return [
        CorpusEntry("bern(0.3)", bernoulli(0.3)),
        CorpusEntry("bern(0.5)", bernoulli(0.5)),
        CorpusEntry("bin(2,0.5)", binomial(2, 0.5)),
        CorpusEntry("bin(3,0.4)", binomial(3, 0.4)),
        CorpusEntry("pmf(1,1,1,1)", uniform(3)),
        CorpusEntry("geom(0.5)", geometric(0.5)),
        CorpusEntry("nb(2,0.5)", negative_binomial(2, 0.5)),
        CorpusEntry("pois(1)", poisson(1.0)),
        CorpusEntry("pois(2)", poisson(2.0)),
        _random_ulc(rng),
        _random_non_ulc(rng),
    ]


# Finite support with mean == variance == 1; drives the faster-rate claims.
EQUIDISPERSED = CorpusEntry("pmf(0.4,0.3,0.2,0.1)", from_weights([0.4, 0.3, 0.2, 0.1]))


def classify(f: Pmf) -> str:
    """'ulc', 'reverse' (log-concave with po <=lc f) or 'neither'."""
    if is_ulc(f):
        return "ulc"
    if is_log_concave(f) and poisson_leq_lc(f.mean, f):
        return "reverse"
    return "neither"


def random_pmf(rng, max_support: int = 6) -> Pmf:
    k = int(rng.integers(1, max_support + 1))
    return from_weights(rng.uniform(0.05, 1.0, size=k + 1))


def random_triples(count: int, seed: int = SEED) -> list[tuple[Pmf, Pmf, Pmf]]:
    rng = np.random.default_rng(seed)
    return [tuple(random_pmf(rng) for _ in range(3)) for _ in range(count)]


def _spread(w: np.ndarray, rng) -> np.ndarray:
    """Mean-preserving spread: move mass from i to i - a and i + b."""
    w = np.append(w, np.zeros(4))
    candidates = np.flatnonzero(w[1:] > 0) + 1
    i = int(rng.choice(candidates))
    a = int(rng.integers(1, i + 1))
    b = int(rng.integers(1, 4))
    m = w[i] * rng.uniform(0.2, 1.0)
    w[i] -= m
    w[i - a] += m * b / (a + b)
    w[i + b] += m * a / (a + b)
    return w


def cx_pairs(count: int, seed: int = SEED) -> list[tuple[Pmf, Pmf]]:
    """Seeded pairs f <=cx g built by random mean-preserving spreads."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        k = int(rng.integers(2, 7))
        w = rng.uniform(0.05, 1.0, size=k + 1)
        w /= w.sum()
        g = w.copy()
        for _ in range(int(rng.integers(1, 4))):
            g = _spread(g, rng)
        f, g = Pmf(w), Pmf(g / g.sum())
        if leq_cx(f, g):
            pairs.append((f, g))
    return pairs
