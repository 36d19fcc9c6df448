"""Distribution expressions: ``thin(conv(bin(2,0.5),pois(1)),0.25)`` and friends.

Grammar (whitespace-insensitive)::

    expr   := IDENT '(' args ')'
    args   := arg (',' arg)*
    arg    := NUMBER | expr
    NUMBER := [+-]? (digits ['.' digits*] | '.' digits) ([eE] [+-]? digits)?
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from ..errors import DomainError, ThinlawError
from ..pmf import (
    DEFAULT_TOL,
    Pmf,
    Tolerances,
    bernoulli,
    binomial,
    from_weights,
    geometric,
    negative_binomial,
    poisson,
)
from ..transforms import convolve, law_of_thin_numbers, self_convolve, size_bias, thin

__all__ = ["DistExpr", "EvalError", "ParseError", "SIGNATURES", "evaluate", "format_expr", "parse"]

NUM, EXPR, INT = "number", "expr", "integer"

# name -> (argument kinds, variadic); a variadic signature repeats its single kind.
SIGNATURES = {
    "bin": ((INT, NUM), False),
    "pois": ((NUM,), False),
    "geom": ((NUM,), False),
    "nb": ((NUM, NUM), False),
    "bern": ((NUM,), False),
    "pmf": ((NUM,), True),
    "thin": ((EXPR, NUM), False),
    "conv": ((EXPR, EXPR), False),
    "pow": ((EXPR, INT), False),
    "sbias": ((EXPR,), False),
    "lotn": ((EXPR, INT), False),
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[(),]))"
)


class ParseError(ThinlawError, ValueError):
    """Syntax or signature error at byte ``offset``; ``expected`` lists acceptable tokens."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        hint = ""
        if self.expected:
            hint = "; expected " + " or ".join(sorted(self.expected))
        super().__init__(f"at byte {offset}: {message}{hint}")


class EvalError(DomainError):
    """An operation rejected its input; ``path`` locates the failing node."""

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"in {path}: {message}")


Arg = Union[float, "DistExpr"]


@dataclass(frozen=True)
class DistExpr:
    name: str
    args: tuple

    def __str__(self):
        return format_expr(self)


def _fmt_number(x: float) -> str:
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_expr(e: DistExpr) -> str:
    """Canonical text; ``parse(format_expr(e)) == e``."""
    parts = [format_expr(a) if isinstance(a, DistExpr) else _fmt_number(a) for a in e.args]
    return f"{e.name}({','.join(parts)})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _byte(self, i: int) -> int:
        return len(self.text[:i].encode("utf-8"))

    def _tokenize(self, text):
        tokens, i = [], 0
        while True:
            while i < len(text) and text[i].isspace():
                i += 1
            if i >= len(text):
                tokens.append(("eof", "", self._byte(i)))
                return tokens
            m = _TOKEN.match(text, i)
            if m is None or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r}", self._byte(i), ("identifier", NUM, "'('", "')'", "','"))
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), self._byte(start)))
            i = m.end()

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind, value=None, expected=()):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            shown = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"unexpected {shown}", tok[2], expected)
        self.pos += 1
        return tok

    def parse(self) -> DistExpr:
        e = self.expr()
        self.take("eof", expected=("end of input",))
        return e

    def expr(self) -> DistExpr:
        name_tok = self.take("ident", expected=("identifier",))
        name = name_tok[1]
        if name not in SIGNATURES:
            raise ParseError(f"unknown name {name!r}", name_tok[2], SIGNATURES)
        self.take("punct", "(", expected=("'('",))
        offsets = [self.peek()[2]]
        args = [self.arg()]
        while self.peek()[:2] == ("punct", ","):
            self.pos += 1
            offsets.append(self.peek()[2])
            args.append(self.arg())
        close = self.take("punct", ")", expected=("')'", "','"))
        self._check_signature(name, args, offsets, name_tok[2], close[2])
        return DistExpr(name, tuple(args))

    def arg(self) -> Arg:
        tok = self.peek()
        if tok[0] == "num":
            self.pos += 1
            return float(tok[1])
        if tok[0] == "ident":
            return self.expr()
        shown = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"unexpected {shown}", tok[2], (NUM, "identifier"))

    @staticmethod
    def _check_signature(name, args, offsets, at, close):
        kinds, variadic = SIGNATURES[name]
        if variadic:
            kinds = kinds * len(args)
        if len(args) != len(kinds):
            raise ParseError(f"{name} takes {len(kinds)} argument(s), got {len(args)}", close)
        for a, kind, off in zip(args, kinds, offsets):
            if kind == EXPR and not isinstance(a, DistExpr):
                raise ParseError(f"{name} needs a distribution here", off, ("identifier",))
            if kind in (NUM, INT) and isinstance(a, DistExpr):
                raise ParseError(f"{name} needs a number here", off, (NUM,))
            if kind in (NUM, INT) and not math.isfinite(a):
                raise ParseError("number out of range", off, (NUM,))
            if kind == INT and not a.is_integer():
                raise ParseError(f"{name} needs an integer here", off, (INT,))


def parse(text: str) -> DistExpr:
    """Parse a distribution expression; raises :class:`ParseError`."""
    return _Parser(text).parse()


def _build(e: DistExpr, vals, tol: Tolerances) -> Pmf:
    a = vals
    if e.name == "bin":
        return binomial(int(a[0]), a[1])
    if e.name == "pois":
        return poisson(a[0], tol.tail_eps)
    if e.name == "geom":
        return geometric(a[0], tol.tail_eps)
    if e.name == "nb":
        return negative_binomial(a[0], a[1], tol.tail_eps)
    if e.name == "bern":
        return bernoulli(a[0])
    if e.name == "pmf":
        return from_weights(a)
    if e.name == "thin":
        return thin(a[0], a[1])
    if e.name == "conv":
        return convolve(a[0], a[1])
    if e.name == "pow":
        return self_convolve(a[0], int(a[1]))
    if e.name == "sbias":
        return size_bias(a[0])
    if e.name == "lotn":
        n = int(a[1])
        if n < 1:
            raise DomainError("n must be >= 1")
        return law_of_thin_numbers(a[0], n)
    raise DomainError(f"unknown name {e.name!r}")


def evaluate(e: DistExpr | str, tol: Tolerances = DEFAULT_TOL, _path: str = "") -> Pmf:
    """Evaluate bottom-up; domain errors are re-raised as :class:`EvalError` with the node path."""
    if isinstance(e, str):
        e = parse(e)
    path = f"{_path}/{e.name}" if _path else e.name
    vals = [
        evaluate(a, tol, f"{path}[{k}]") if isinstance(a, DistExpr) else a for k, a in enumerate(e.args)
    ]
    try:
        return _build(e, vals, tol)
    except EvalError:
        raise
    except (DomainError, ValueError) as exc:
        raise EvalError(str(exc), path) from exc
