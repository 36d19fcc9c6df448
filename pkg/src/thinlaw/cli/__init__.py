"""Command-line interface and the distribution expression language."""

from .expr import DistExpr, EvalError, ParseError, evaluate, format_expr, parse
from .main import build_parser, main

__all__ = ["DistExpr", "EvalError", "ParseError", "build_parser", "evaluate", "format_expr", "main", "parse"]
