"""Executable theorem checks, sequence tables, rate fits and the conjecture explorer."""

from .checks import *  # noqa: F401,F403
from .checks import __all__ as _checks_all
from .conjecture import FiniteDiffTable, complete_monotonicity, conjecture_sequence
from .corpus import EQUIDISPERSED, SEED, CorpusEntry, builtin_corpus, classify, cx_pairs, random_triples
from .rates import RateEstimate, check_tv_rate, convergence_suite, estimate_rate, log_log_slope
from .sequences import COLUMNS, SequenceTable, monotone_links, sequences
from .suites import SUITES, SuiteRecord, run_suite, run_suites

__all__ = list(_checks_all) + [
    "COLUMNS",
    "CorpusEntry",
    "EQUIDISPERSED",
    "FiniteDiffTable",
    "RateEstimate",
    "SEED",
    "SUITES",
    "SequenceTable",
    "SuiteRecord",
    "builtin_corpus",
    "check_tv_rate",
    "classify",
    "complete_monotonicity",
    "conjecture_sequence",
    "convergence_suite",
    "cx_pairs",
    "estimate_rate",
    "log_log_slope",
    "monotone_links",
    "random_triples",
    "run_suite",
    "run_suites",
    "sequences",
]
