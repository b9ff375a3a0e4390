"""Evaluation engine: run methods over a dataset, aggregate and report."""

from .models import (
    METHODS,
    OUTCOME_RECORD_SCHEMA,
    EvalOutcome,
    Method,
    read_outcomes,
    write_outcomes,
)
from .report import emit_report, render_csv, render_markdown
from .runner import Evaluator, run_item
from .stats import (
    PAIRWISE_COMPARISONS,
    PairwiseTest,
    ResultRow,
    ResultTable,
    aggregate,
    fisher_exact,
    pairwise_tests,
)

__all__ = [
    "METHODS",
    "OUTCOME_RECORD_SCHEMA",
    "PAIRWISE_COMPARISONS",
    "EvalOutcome",
    "Evaluator",
    "Method",
    "PairwiseTest",
    "ResultRow",
    "ResultTable",
    "aggregate",
    "emit_report",
    "fisher_exact",
    "pairwise_tests",
    "read_outcomes",
    "render_csv",
    "render_markdown",
    "run_item",
    "write_outcomes",
]
