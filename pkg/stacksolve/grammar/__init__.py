"""Synthetic grammar for stacking problems and plans."""

from .templates import (
    parse_fact,
    parse_plan_nl,
    parse_problem_nl,
    render_action,
    render_fact,
    render_plan,
    render_problem,
    split_sentences,
)
from .vocabulary import RESERVED_WORDS, Vocabulary, validate_name

__all__ = [
    "RESERVED_WORDS",
    "Vocabulary",
    "parse_fact",
    "parse_plan_nl",
    "parse_problem_nl",
    "render_action",
    "render_fact",
    "render_plan",
    "render_problem",
    "split_sentences",
    "validate_name",
]
