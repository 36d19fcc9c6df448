"""Independent direct-summation oracle.

Everything here works on plain lists of ``mpmath.mpf`` at 40 digits and uses
textbook definitions only (explicit double sums, nested-loop convolution,
``mpmath.binomial``).  It shares no code with the package under test and is
used to derive the frozen expected values in the suite.
"""

import mpmath as mp

mp.mp.dps = 40


def mpf_list(ws):
    return [mp.mpf(w) for w in ws]


def normalize(ws):
    ws = mpf_list(ws)
    s = mp.fsum(ws)
    return [w / s for w in ws]


def binomial(n, p):
    p = mp.mpf(p)
    return [mp.binomial(n, i) * p**i * (1 - p) ** (n - i) for i in range(n + 1)]


def poisson(lam, n_terms):
    lam = mp.mpf(lam)
    return [lam**i * mp.exp(-lam) / mp.factorial(i) for i in range(n_terms)]


def thin(f, alpha):
    alpha = mp.mpf(alpha)
    out = []
    for i in range(len(f)):
        s = mp.mpf(0)
        for j in range(i, len(f)):
            s += f[j] * mp.binomial(j, i) * alpha**i * (1 - alpha) ** (j - i)
        out.append(s)
    return out


def convolve(f, g):
    out = [mp.mpf(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def power(f, n):
    out = [mp.mpf(1)]
    for _ in range(n):
        out = convolve(out, f)
    return out


def mean(f):
    return mp.fsum(i * w for i, w in enumerate(f))


def variance(f):
    m = mean(f)
    return mp.fsum(i * i * w for i, w in enumerate(f)) - m * m


def size_bias(f):
    lam = mean(f)
    return [(i + 1) * f[i + 1] / lam for i in range(len(f) - 1)]


def entropy(f):
    return -mp.fsum(w * mp.log(w) for w in f if w > 0)


def kl(f, g):
    total = mp.mpf(0)
    for i, w in enumerate(f):
        if w == 0:
            continue
        if i >= len(g) or g[i] == 0:
            return mp.inf
        total += w * mp.log(w / g[i])
    return total


def d_poisson(f, lam=None):
    """D(f | po(lam)) by the defining sum with the Poisson pmf evaluated exactly."""
    if lam is None:
        lam = mean(f)
    lam = mp.mpf(lam)
    total = mp.mpf(0)
    for i, w in enumerate(f):
        if w > 0:
            po = lam**i * mp.exp(-lam) / mp.factorial(i)
            total += w * mp.log(w / po)
    return total


def chi2(f, g):
    total = mp.mpf(0)
    for i in range(max(len(f), len(g))):
        fi = f[i] if i < len(f) else 0
        gi = g[i] if i < len(g) else 0
        if gi == 0:
            if fi != 0:
                return mp.inf
            continue
        total += (fi - gi) ** 2 / gi
    return total


def poisson_entropy(lam, n_terms=200):
    return entropy(poisson(lam, n_terms))


def lotn(f, n):
    return thin(power(f, n), mp.mpf(1) / n)
