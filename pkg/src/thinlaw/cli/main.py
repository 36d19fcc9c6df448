"""``thinlaw`` command line: eval, sweep, verify and conjecture subcommands.

Exit codes: 0 when everything passes, 1 when a check fails, 2 on usage,
parse or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from ..errors import ThinlawError
from ..harness.conjecture import MAX_ORDER, complete_monotonicity, conjecture_sequence
from ..harness.corpus import CorpusEntry, builtin_corpus
from ..harness.sequences import COLUMNS, sequences
from ..harness.suites import SUITES, run_suites
from ..info import d_poisson, entropy, scaled_fisher
from ..orders import is_log_concave, is_ulc
from .expr import ParseError, evaluate, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FUNCTIONALS = (
    "mean",
    "variance",
    "entropy",
    "d_poisson",
    "scaled_fisher",
    "is_ulc",
    "is_log_concave",
    "support_max",
)

REFERENCE_TABLE = ("bin(2,0.5)", 10, ("d", "t", "r", "h"))
ASSERTED_ORDER = 4  # higher difference orders are reported, not asserted


class UsageError(Exception):
    pass


def _functional(name, f):
    if name == "mean":
        return f.mean
    if name == "variance":
        return f.variance
    if name == "entropy":
        return entropy(f)
    if name == "d_poisson":
        return d_poisson(f)
    if name == "scaled_fisher":
        return scaled_fisher(f)
    if name == "is_ulc":
        return bool(is_ulc(f))
    if name == "is_log_concave":
        return bool(is_log_concave(f))
    if name == "support_max":
        return f.support_max
    raise UsageError(f"unknown functional {name!r}")


def _json_value(x, digits=None):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        if digits is not None:
            return float(f"{x:.{digits}g}")
    return x


def fmt(x, digits: int) -> str:
    """Locale-independent rendering with ``digits`` significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{digits}g}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _precision(value: str) -> int:
    p = int(value)
    if not 1 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must be in 1..17")
    return p


def cmd_eval(args, out) -> int:
    names = _split(args.functionals) if args.functionals else list(FUNCTIONALS)
    for name in names:
        if name not in FUNCTIONALS:
            raise UsageError(f"unknown functional {name!r}; choose from {', '.join(FUNCTIONALS)}")
    f = evaluate(parse(args.expr))
    record = {name: _json_value(_functional(name, f)) for name in FUNCTIONALS if name in names}
    out.write(json.dumps(record) + "\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    if args.figure1:
        expr, n_max, columns = REFERENCE_TABLE
    else:
        if args.expr is None:
            raise UsageError("sweep needs an expression or --figure1")
        expr, n_max = args.expr, args.n_max
        columns = tuple(_split(args.columns))
    for c in columns:
        if c not in COLUMNS:
            raise UsageError(f"unknown column {c!r}; choose from {', '.join(COLUMNS)}")
    table = sequences(evaluate(parse(expr)), n_max, columns=columns)
    p = args.precision
    if args.format == "json":
        obj = {"n": table.n_values}
        obj.update({c: [_json_value(v, p) for v in table[c]] for c in columns})
        out.write(json.dumps(obj) + "\n")
    else:
        rows = [[n] + [fmt(row[c], p) for c in columns] for n, row in table.rows()]
        out.write(_csv(["n", *columns], rows))
    return EXIT_OK


def read_corpus(path: str) -> list[CorpusEntry]:
    """One expression per line; blank lines and text after '#' are ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read corpus {path!r}: {exc.strerror}") from exc
    entries = []
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            entries.append(CorpusEntry(text, evaluate(parse(text))))
        except ThinlawError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
    if not entries:
        raise UsageError(f"corpus {path!r} is empty")
    return entries


def cmd_verify(args, out) -> int:
    names = []
    for s in args.suite or ["all"]:
        names.extend(_split(s))
    if "all" in names:
        names = list(SUITES)
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    builtin = args.corpus == "builtin"
    corpus = builtin_corpus() if builtin else read_corpus(args.corpus)
    records = run_suites(names, corpus, n_max=args.n_max, include_global=builtin)
    p = args.precision
    rows, failed, skipped = [], 0, 0
    for r in records:
        if r.result is None:
            skipped += 1
            rows.append([r.suite, r.index, r.label, "", "", "", "", "skip", r.skip])
            continue
        res = r.result
        status = "pass" if res.passed else "fail"
        failed += not res.passed
        rows.append([r.suite, r.index, r.label, res.name, fmt(res.lhs, p), fmt(res.rhs, p), fmt(res.slack, p), status, res.note])
    if not args.quiet:
        out.write(_csv(["suite", "index", "label", "check", "lhs", "rhs", "slack", "status", "note"], rows))
    total = len(records) - skipped
    sys.stderr.write(f"{total - failed} passed, {failed} failed, {skipped} skipped\n")
    if failed or (args.strict and skipped):
        return EXIT_FAIL
    return EXIT_OK


def cmd_conjecture(args, out) -> int:
    if not 0 <= args.order <= MAX_ORDER:
        raise UsageError(f"order must be in 0..{MAX_ORDER}")
    ns, s = conjecture_sequence(args.family, args.lam, args.n_max)
    table = complete_monotonicity(s, args.order, n_values=ns)
    p = args.precision
    rows = []
    for k in range(table.order + 1):
        for j, value in enumerate(table.diffs[k]):
            ok = table.sign_ok[k][j]
            rows.append([k, ns[j], fmt(value, p), "ok" if ok else "violation", fmt(table.noise_floor[k], p)])
    out.write(_csv(["k", "n", "diff", "sign", "noise_floor"], rows))
    bad = table.violations(ASSERTED_ORDER)
    reported = [v for v in table.violations() if v[0] > ASSERTED_ORDER]
    sys.stderr.write(f"{len(bad)} violation(s) at order <= {ASSERTED_ORDER}, {len(reported)} reported above\n")
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thinlaw",
        description="Exact thinning, convolution and information functionals for integer pmfs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate functionals of one distribution expression")
    p.add_argument("expr", help='distribution expression, e.g. "thin(bin(2,0.5),0.5)"')
    p.add_argument("--functionals", help=f"comma-separated subset of {','.join(FUNCTIONALS)}")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="tabulate n-indexed functionals of the thinned n-fold sum")
    p.add_argument("expr", nargs="?")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--columns", default="d,t,r,h", help=f"comma-separated subset of {','.join(COLUMNS)}")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--precision", type=_precision, default=9, help="significant digits (1..17)")
    p.add_argument("--figure1", action="store_true", help="preset: bin(2,0.5), n = 1..10, columns d,t,r,h")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run theorem suites over a corpus")
    p.add_argument("--suite", action="append", help="suite name, comma list or 'all' (repeatable)")
    p.add_argument("--corpus", default="builtin", help="'builtin' or a file with one expression per line")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--strict", action="store_true", help="count skipped checks as failures")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")
    p.add_argument("--precision", type=_precision, default=9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="finite differences of divergence sequences")
    p.add_argument("--family", choices=("bin", "nb"), required=True)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--order", "-K", type=int, default=4)
    p.add_argument("--precision", type=_precision, default=9)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"thinlaw: {exc}\n")
        return EXIT_USAGE
    except ThinlawError as exc:
        sys.stderr.write(f"thinlaw: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
