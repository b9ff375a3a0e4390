"""Few-shot prompting and completion transports for the LLM roles."""

from .client import (
    CompletionClient,
    LiveTransport,
    RecordTransport,
    ReplayTransport,
    Transport,
    complete,
    extract_completion,
)
from .prompts import (
    DEFAULT_EXAMPLES,
    FewShotExample,
    HeldOutProblem,
    build_parser_prompt,
    build_planner_prompt,
    check_disjoint,
    format_goal,
    parser_examples,
    planner_examples,
)
from .transcript import (
    FULL_PROBLEM_PARAMS,
    PARSER_PARAMS,
    PLANNER_PARAMS,
    TRANSCRIPT_ENTRY_SCHEMA,
    CompletionParams,
    Transcript,
    TranscriptEntry,
    prompt_hash,
    truncate_at_stop,
)

__all__ = [
    "DEFAULT_EXAMPLES",
    "FULL_PROBLEM_PARAMS",
    "PARSER_PARAMS",
    "PLANNER_PARAMS",
    "TRANSCRIPT_ENTRY_SCHEMA",
    "CompletionClient",
    "CompletionParams",
    "FewShotExample",
    "HeldOutProblem",
    "LiveTransport",
    "RecordTransport",
    "ReplayTransport",
    "Transcript",
    "TranscriptEntry",
    "Transport",
    "build_parser_prompt",
    "build_planner_prompt",
    "check_disjoint",
    "complete",
    "extract_completion",
    "format_goal",
    "parser_examples",
    "planner_examples",
    "prompt_hash",
    "truncate_at_stop",
]
