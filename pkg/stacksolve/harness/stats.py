"""Success-rate tables and Fisher's exact test."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import hypergeom

from ..benchgen import CONDITIONS, Condition
from ..exceptions import DegenerateMarginsError
from ..planner import FailureReason
from .models import METHODS, EvalOutcome, Method

_LOGGER = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-12

PAIRWISE_COMPARISONS: tuple[tuple[Method, Method], ...] = (
    (Method.PS_GRAMMAR, Method.LLM_PLANNER),
    (Method.PS_LLM, Method.LLM_PLANNER),
)


def fisher_exact(table: Sequence[Sequence[int]]) -> float:
    """Two-sided exact p-value of a 2x2 table.

    Sums the hypergeometric probability of every table with the observed
    margins that is no more likely than the observed one.

    Raises:
        ValueError: for a non 2x2 table or negative or non-integer counts.
        DegenerateMarginsError: if a row or column sums to zero.
    """
    cells = np.asarray(table)
    if cells.shape != (2, 2):
        raise ValueError("2x2 contingency table expected")
    if not np.issubdtype(cells.dtype, np.integer) or (cells < 0).any():
        raise ValueError("Counts must be non-negative integers")
    cells = cells.astype(np.int64)
    rows = cells.sum(axis=1)
    cols = cells.sum(axis=0)
    if 0 in rows or 0 in cols:
        raise DegenerateMarginsError(f"Degenerate margins in {cells.tolist()}")

    total = int(cells.sum())
    row0, col0 = int(rows[0]), int(cols[0])
    support = np.arange(max(0, row0 + col0 - total), min(row0, col0) + 1)
    pmf = hypergeom.pmf(support, total, col0, row0)
    observed = hypergeom.pmf(int(cells[0, 0]), total, col0, row0)
    p_value = float(pmf[pmf <= observed * (1 + RELATIVE_TOLERANCE)].sum())
    return min(1.0, p_value)


@dataclass(frozen=True, slots=True)
class ResultRow:
    n: int
    successes: int

    @property
    def rate(self) -> float:
        return self.successes / self.n if self.n else 0.0


@dataclass
class ResultTable:
    """Success counts keyed by (method, condition), with failure reasons."""

    rows: dict[tuple[Method, Condition], ResultRow] = field(default_factory=dict)
    failures: dict[tuple[Method, Condition], Counter[FailureReason]] = field(
        default_factory=dict
    )

    @property
    def methods(self) -> list[Method]:
        present = {method for method, _ in self.rows}
        return [method for method in METHODS if method in present]

    def row(self, method: Method, condition: Condition) -> ResultRow:
        return self.rows.get((method, condition), ResultRow(0, 0))

    def __len__(self) -> int:
        return len(self.rows)


def aggregate(outcomes: Iterable[EvalOutcome]) -> ResultTable:
    """Group outcomes by (method, condition) and count successes."""
    counts: Counter[tuple[Method, Condition]] = Counter()
    successes: Counter[tuple[Method, Condition]] = Counter()
    failures: dict[tuple[Method, Condition], Counter[FailureReason]] = {}
    for outcome in outcomes:
        key = (outcome.method, outcome.condition)
        counts[key] += 1
        successes[key] += outcome.success
        if outcome.outcome.failure is not None:
            failures.setdefault(key, Counter())[outcome.outcome.failure] += 1
    ordered = sorted(counts, key=lambda key: (METHODS.index(key[0]), CONDITIONS.index(key[1])))
    return ResultTable(
        rows={key: ResultRow(counts[key], successes[key]) for key in ordered},
        failures=failures,
    )


@dataclass(frozen=True, slots=True)
class PairwiseTest:
    condition: Condition
    method_a: Method
    method_b: Method
    p_value: float | None  # None when a margin is zero

    @property
    def label(self) -> str:
        return f"{self.method_a} vs {self.method_b}"


def pairwise_tests(table: ResultTable) -> list[PairwiseTest]:
    """Fisher tests per condition for each comparison whose methods are both present."""
    present = set(table.methods)
    tests: list[PairwiseTest] = []
    for condition in CONDITIONS:
        for method_a, method_b in PAIRWISE_COMPARISONS:
            if method_a not in present or method_b not in present:
                continue
            row_a, row_b = table.row(method_a, condition), table.row(method_b, condition)
            contingency = [
                [row_a.successes, row_a.n - row_a.successes],
                [row_b.successes, row_b.n - row_b.successes],
            ]
            try:
                p_value: float | None = fisher_exact(contingency)
            except DegenerateMarginsError:
                _LOGGER.debug("Degenerate margins for %s, %s", condition, contingency)
                p_value = None
            tests.append(PairwiseTest(condition, method_a, method_b, p_value))
    return tests
