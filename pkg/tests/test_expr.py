import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exprgen import expressions, random_expr
from thinlaw import DomainError, approx_eq, binomial, poisson
from thinlaw.cli.expr import DistExpr, EvalError, ParseError, evaluate, format_expr, parse


class TestParse:
    def test_thin_node(self):
        e = parse("thin(bin(2,0.5),0.5)")
        assert e == DistExpr("thin", (DistExpr("bin", (2.0, 0.5)), 0.5))

    def test_lotn_node(self):
        assert parse("lotn(bern(0.5),10)").name == "lotn"

    def test_whitespace(self):
        assert parse("  conv( bern(0.5) ,\tpois(1) ) ") == parse("conv(bern(0.5),pois(1))")

    @pytest.mark.parametrize("text", ["pmf(1e-3,2.5E+1)", "pmf(.5,+1)", "bin(3,1)"])
    def test_number_forms(self, text):
        parse(text)

    @pytest.mark.parametrize(
        "text, offset, expected",
        [
            ("bin(2)", 5, set()),
            ("foo(1)", 0, None),
            ("bin(2,0.5", 9, {"')'", "','"}),
            ("bin(2,0.5))", 10, {"end of input"}),
            ("thin(1,0.5)", 5, {"identifier"}),
            ("bin(2.5,0.5)", 4, {"integer"}),
            ("bin 2", 4, {"'('"}),
            ("pmf(1;2)", 5, None),
            ("", 0, {"identifier"}),
            ("sbias(bin(2,0.5),1)", 18, set()),
        ],
    )
    def test_errors(self, text, offset, expected):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.offset == offset
        if expected is not None:
            assert info.value.expected == expected

    def test_byte_offset_counts_utf8(self):
        with pytest.raises(ParseError) as info:
            parse("pmf(1,é)")
        assert info.value.offset == 6
        with pytest.raises(ParseError) as info:
            parse("é")
        assert info.value.offset == 0

    def test_unknown_name_lists_names(self):
        with pytest.raises(ParseError) as info:
            parse("binom(2,0.5)")
        assert "bin" in info.value.expected and "lotn" in info.value.expected


class TestRoundTrip:
    def test_generated(self):
        for e in expressions(200):
            assert parse(format_expr(e)) == e

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_property(self, seed):
        e = random_expr(random.Random(seed))
        text = format_expr(e)
        assert parse(text) == e
        assert format_expr(parse(text)) == text

    def test_canonical_numbers(self):
        assert format_expr(parse("bin(2.0, 5e-1)")) == "bin(2,0.5)"
        assert format_expr(parse("pmf(0.1,1e-20)")) == "pmf(0.1,1e-20)"


class TestEvaluate:
    def test_thinning_identity(self):
        assert approx_eq(evaluate("thin(bin(2,0.5),0.5)"), evaluate("bin(2,0.25)"), 1e-15)

    def test_size_bias_poisson(self):
        assert approx_eq(evaluate("sbias(pois(1))"), poisson(1.0), 1e-13)

    def test_pmf(self):
        assert evaluate("pmf(1,2,1)").weights.tolist() == [0.25, 0.5, 0.25]

    def test_pow_and_lotn(self):
        assert approx_eq(evaluate("pow(bern(0.5),2)"), binomial(2, 0.5), 1e-16)
        assert approx_eq(evaluate("lotn(bern(0.5),4)"), binomial(4, 0.125), 1e-15)

    def test_error_path(self):
        with pytest.raises(EvalError) as info:
            evaluate("conv(bern(0.5),sbias(pmf(1)))")
        assert info.value.path == "conv[1]/sbias"
        assert isinstance(info.value, DomainError)

    @pytest.mark.parametrize("text", ["bin(2,1.5)", "thin(bern(0.5),2)", "pow(bern(0.5),0)", "lotn(bern(0.5),0)", "geom(0)"])
    def test_domain_errors(self, text):
        with pytest.raises(EvalError):
            evaluate(text)
