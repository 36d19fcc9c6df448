import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from thinlaw import (
    DEFAULT_TOL,
    DomainError,
    EmptyOrNegative,
    Pmf,
    Tolerances,
    approx_eq,
    bernoulli,
    binomial,
    from_weights,
    geometric,
    linf,
    negative_binomial,
    point_mass,
    poisson,
    uniform,
)
from thinlaw.pmf import log_factorial


class TestFromWeights:
    @pytest.mark.parametrize(
        "raw, expected",
        [([2, 2], [0.5, 0.5]), ([1], [1.0]), ([1, 2, 1], [0.25, 0.5, 0.25])],
    )
    def test_normalizes(self, raw, expected):
        f = from_weights(raw)
        assert f.weights.tolist() == expected
        assert f.deficit == 0.0

    def test_trims_trailing_zeros(self):
        assert from_weights([1, 1, 0, 0]).weights.tolist() == [0.5, 0.5]

    def test_clamps_rounding_negatives(self):
        f = from_weights([1.0, -1e-16, 1.0])
        assert f.weights[1] == 0.0

    @pytest.mark.parametrize("raw", [[0, 0], [], [1, -1e-3], [-1.0]])
    def test_rejects(self, raw):
        with pytest.raises(EmptyOrNegative):
            from_weights(raw)

    @given(st.lists(st.floats(0.0, 10.0), min_size=1, max_size=12).filter(lambda w: sum(w) > 1e-6))
    def test_always_normalized(self, w):
        f = from_weights(w)
        assert abs(math.fsum(f.weights) - 1.0) <= 1e-12
        assert f.weights[-1] > 0 or len(f) == 1


class TestPmfInvariants:
    def test_mass_balance_enforced(self):
        with pytest.raises(DomainError):
            Pmf([0.5, 0.4])

    def test_deficit_counts_toward_balance(self):
        f = Pmf([0.5, 0.4], deficit=0.1)
        assert f.deficit == pytest.approx(0.1)

    def test_read_only(self):
        f = binomial(2, 0.5)
        with pytest.raises(ValueError):
            f.weights[0] = 1.0

    def test_index_past_support_is_zero(self):
        assert bernoulli(0.5)[7] == 0.0

    def test_equality_and_hash(self):
        assert binomial(2, 0.5) == from_weights([1, 2, 1])
        assert len({binomial(2, 0.5), from_weights([1, 2, 1])}) == 1

    def test_moments(self):
        f = binomial(4, 0.25)
        assert f.mean == pytest.approx(1.0)
        assert f.variance == pytest.approx(0.75)
        assert f.support_max == 4


class TestTolerances:
    def test_defaults(self):
        assert (DEFAULT_TOL.eps_eq, DEFAULT_TOL.eps_ineq, DEFAULT_TOL.tail_eps) == (1e-10, 1e-9, 1e-15)

    @pytest.mark.parametrize("kw", [{"eps_eq": 0.0}, {"eps_mass": 1e-9, "eps_eq": 1e-10}, {"eps_ineq": 1e-11}])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            Tolerances(**kw)


class TestFamilies:
    def test_binomial_examples(self):
        assert binomial(2, 0.5).weights.tolist() == [0.25, 0.5, 0.25]
        assert binomial(0, 0.3) == point_mass(0)
        assert binomial(3, 1.0) == point_mass(3)

    @pytest.mark.parametrize("n, p", [(5, 0.3), (40, 0.01), (200, 0.5)])
    def test_binomial_matches_oracle(self, n, p):
        ref = [float(x) for x in oracle.binomial(n, p)]
        assert np.max(np.abs(binomial(n, p).weights - ref[: len(binomial(n, p))])) < 1e-14

    @pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
    def test_binomial_domain(self, p):
        with pytest.raises(DomainError):
            binomial(2, p)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 10.0])
    def test_poisson_truncation(self, lam):
        f = poisson(lam)
        assert 0 < f.deficit <= DEFAULT_TOL.tail_eps
        ref = [float(x) for x in oracle.poisson(lam, len(f))]
        assert np.max(np.abs(f.weights - ref)) < 1e-15
        assert f.mean == pytest.approx(lam, abs=1e-12)

    def test_negative_binomial_moments(self):
        f = negative_binomial(2, 0.5)
        assert f.mean == pytest.approx(2.0, abs=1e-12)
        assert f.variance == pytest.approx(4.0, abs=1e-10)

    def test_geometric_is_nb1(self):
        assert geometric(0.5) == negative_binomial(1, 0.5)
        assert geometric(0.5).weights[:3] == pytest.approx([0.5, 0.25, 0.125], abs=1e-15)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_negative_binomial_open_interval(self, p):
        with pytest.raises(DomainError):
            negative_binomial(2, p)

    def test_uniform(self):
        assert uniform(3).weights.tolist() == [0.25] * 4

    def test_log_factorial(self):
        t = log_factorial(100)
        assert t.size == 101
        assert t[10] == pytest.approx(math.log(math.factorial(10)), rel=1e-15)


class TestComparison:
    def test_linf_pads(self):
        assert linf(bernoulli(0.5), point_mass(0)) == 0.5

    def test_approx_eq(self):
        f = binomial(2, 0.5)
        g = Pmf([0.25 + 1e-11, 0.5 - 1e-11, 0.25])
        assert approx_eq(f, g)
        assert not approx_eq(f, g, eps_eq=1e-12)
