"""CSV and Markdown reports of success rates."""

from __future__ import annotations

import csv
import io
import logging
from collections.abc import Sequence
from pathlib import Path

from ..benchgen import CONDITIONS
from ..const import REPORT_CSV, REPORT_MARKDOWN
from ..planner import FailureReason
from .stats import PairwiseTest, ResultTable

_LOGGER = logging.getLogger(__name__)

CSV_FIELDS = ("method", "condition", "n", "successes", "rate")


def format_rate(successes: int, n: int) -> str:
    return f"{successes / n:.3f} ({successes}/{n})" if n else "n/a"


def format_p_value(p_value: float | None) -> str:
    return "n/a" if p_value is None else f"{p_value:.4g}"


def render_csv(table: ResultTable) -> str:
    """One row per (method, condition) for every method present."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for method in table.methods:
        for condition in CONDITIONS:
            row = table.row(method, condition)
            rate = f"{row.rate:.4f}" if row.n else ""
            writer.writerow([method.value, condition.value, row.n, row.successes, rate])
    return buffer.getvalue()


def render_markdown(table: ResultTable, tests: Sequence[PairwiseTest]) -> str:
    lines = [
        "# Success rates",
        "",
        "| Method | " + " | ".join(condition.value for condition in CONDITIONS) + " |",
        "|---" * (len(CONDITIONS) + 1) + "|",
    ]
    for method in table.methods:
        cells = [
            format_rate(table.row(method, c).successes, table.row(method, c).n) for c in CONDITIONS
        ]
        lines.append(f"| {method.value} | " + " | ".join(cells) + " |")

    lines += ["", "## Pairwise Fisher exact tests", ""]
    if tests:
        lines += ["| Condition | Comparison | p-value |", "|---|---|---|"]
        lines += [
            f"| {test.condition.value} | {test.label} | {format_p_value(test.p_value)} |"
            for test in tests
        ]
    else:
        lines.append("No comparable methods.")

    lines += ["", "## Failures", ""]
    failure_rows: list[str] = []
    for method in table.methods:
        for condition in CONDITIONS:
            counts = table.failures.get((method, condition))
            if not counts:
                continue
            failure_rows.extend(
                f"| {method.value} | {condition.value} | {reason.value} | {counts[reason]} |"
                for reason in FailureReason
                if counts[reason]
            )
    if failure_rows:
        lines += ["| Method | Condition | Reason | Count |", "|---|---|---|---|", *failure_rows]
    else:
        lines.append("No failures.")
    return "\n".join(lines) + "\n"


def emit_report(
    table: ResultTable, tests: Sequence[PairwiseTest], outdir: Path
) -> tuple[Path, Path]:
    """Write the CSV and Markdown reports into `outdir`.

    Raises:
        OSError: if the directory or files cannot be written.
    """
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / REPORT_CSV
    markdown_path = outdir / REPORT_MARKDOWN
    csv_path.write_text(render_csv(table), encoding="utf-8")
    markdown_path.write_text(render_markdown(table, tests), encoding="utf-8")
    _LOGGER.info("[Eval] report written to %s", outdir)
    return csv_path, markdown_path
