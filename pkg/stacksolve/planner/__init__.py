"""Symbolic planner and plan validator."""

from .config import PLANNER_CONFIG_SCHEMA, PlannerConfig
from .search import ResourceExhausted, Solved, SolveResult, Unsolvable, solve
from .validate import FailureReason, SimOutcome, validate

__all__ = [
    "PLANNER_CONFIG_SCHEMA",
    "FailureReason",
    "PlannerConfig",
    "ResourceExhausted",
    "SimOutcome",
    "SolveResult",
    "Solved",
    "Unsolvable",
    "solve",
    "validate",
]
