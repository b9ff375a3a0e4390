#!/usr/bin/env python3
"""Rebuild the replay transcripts committed under tests/fixtures.

Pairs each scripted completion in tests/fixtures/sample_completions.py
with the exact prompt the evaluator sends for it, so the fixtures stay
in step with the prompt builders.
"""

import sys
from collections.abc import Iterable, Mapping
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from stacksolve.benchgen import BenchmarkItem, read_dataset  # noqa: E402
from stacksolve.llm import (  # noqa: E402
    FULL_PROBLEM_PARAMS,
    PARSER_PARAMS,
    PLANNER_PARAMS,
    Transcript,
    TranscriptEntry,
    build_parser_prompt,
    build_planner_prompt,
    parser_examples,
    planner_examples,
)
from tests.fixtures.sample_completions import (  # noqa: E402
    PILOT_COMPLETIONS,
    SUPPLEMENT_FULL_PROBLEM_COMPLETION,
    SUPPLEMENT_PARSER_COMPLETION,
    SUPPLEMENT_PLANNER_COMPLETION,
)

FIXTURES_DIR = ROOT / "tests" / "fixtures"


def build_transcript(
    items: Iterable[BenchmarkItem],
    completions: Mapping[str, tuple[str, str]],
    path: Path | None = None,
) -> Transcript:
    """Return planner and goal-parser entries for every item, in dataset order.

    Writes the transcript to `path` when given.

    Raises:
        KeyError: if an item has no scripted completions.
    """
    planner_header = planner_examples()
    parser_header = parser_examples()
    transcript = Transcript()
    for item in items:
        planned, parsed = completions[item.id]
        transcript.append(
            TranscriptEntry.create(
                build_planner_prompt(planner_header, item.problem), PLANNER_PARAMS, planned
            )
        )
        transcript.append(
            TranscriptEntry.create(
                build_parser_prompt(parser_header, item.problem), PARSER_PARAMS, parsed
            )
        )
    if path is not None:
        transcript.save(path)
    return transcript


def build_supplement_transcript(item: BenchmarkItem, path: Path | None = None) -> Transcript:
    """Return the worked example's entries, including a whole-problem parse."""
    transcript = build_transcript(
        [item], {item.id: (SUPPLEMENT_PLANNER_COMPLETION, SUPPLEMENT_PARSER_COMPLETION)}
    )
    transcript.append(
        TranscriptEntry.create(
            build_parser_prompt(parser_examples(full_problem=True), item.problem, True),
            FULL_PROBLEM_PARAMS,
            SUPPLEMENT_FULL_PROBLEM_COMPLETION,
        )
    )
    if path is not None:
        transcript.save(path)
    return transcript


def main() -> None:
    """Rewrite both fixture transcripts."""
    pilot_dir = FIXTURES_DIR / "pilot"
    pilot = build_transcript(
        read_dataset(pilot_dir / "dataset.jsonl"),
        PILOT_COMPLETIONS,
        pilot_dir / "transcript.jsonl",
    )
    print(f"Wrote {len(pilot)} entries to {pilot_dir / 'transcript.jsonl'}")

    supplement_dir = FIXTURES_DIR / "supplement"
    (item,) = read_dataset(supplement_dir / "dataset.jsonl")
    supplement = build_supplement_transcript(item, supplement_dir / "transcript.jsonl")
    print(f"Wrote {len(supplement)} entries to {supplement_dir / 'transcript.jsonl'}")


if __name__ == "__main__":
    main()
