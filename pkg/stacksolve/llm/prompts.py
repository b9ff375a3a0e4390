"""Few-shot prompt assembly for the planner and parser roles."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..const import (
    FEW_SHOT_SIZE,
    HEADER_ACTIONS,
    HEADER_GOAL_PREDICATE,
    HEADER_PDDL_PROBLEM,
    PARSER_STOP,
)
from ..core import (
    Clear,
    Goal,
    ObjectId,
    On,
    Plan,
    Problem,
    StackFromTable,
    Unstack,
    state_from_stacks,
)
from ..grammar import render_plan, render_problem
from ..pddl import fact_to_sexpr, format_problem, format_sexpr

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FewShotExample:
    """A held-out problem with the text shown after its header."""

    problem: Problem
    solution_text: str


@dataclass(frozen=True, slots=True)
class HeldOutProblem:
    problem: Problem
    plan: Plan

    def for_planner(self) -> FewShotExample:
        return FewShotExample(self.problem, render_plan(self.plan))

    def for_parser(self, full_problem: bool = False) -> FewShotExample:
        if full_problem:
            return FewShotExample(self.problem, format_problem(self.problem).rstrip("\n"))
        return FewShotExample(self.problem, format_goal(self.problem.goal))


def format_goal(goal: Goal) -> str:
    """Goal predicate as shown to the parser role."""
    return format_sexpr(["and", *(fact_to_sexpr(atom) for atom in goal.atoms)])


def _held_out(
    problem_id: str, stacks: list[list[str]], goal: Goal, plan: Plan
) -> HeldOutProblem:
    objects = tuple(ObjectId(name) for stack in stacks for name in stack)
    return HeldOutProblem(Problem(problem_id, objects, state_from_stacks(stacks), goal), plan)


# Header problems, disjoint from anything the benchmark evaluates.
DEFAULT_EXAMPLES: tuple[HeldOutProblem, ...] = (
    _held_out(
        "example-1",
        [["plate", "keyboard"], ["candle"]],
        Goal((On("candle", "keyboard"),)),
        Plan((StackFromTable("candle", "keyboard"),)),
    ),
    _held_out(
        "example-2",
        [["laptop", "cookbook", "coffee mug"]],
        Goal((Clear("laptop"),)),
        Plan((Unstack("coffee mug", "cookbook"), Unstack("cookbook", "laptop"))),
    ),
    _held_out(
        "example-3",
        [["paperback", "remote control"], ["candle"], ["flower vase"]],
        Goal(
            (
                On("candle", "paperback"),
                On("flower vase", "candle"),
                Clear("remote control"),
            )
        ),
        Plan(
            (
                Unstack("remote control", "paperback"),
                StackFromTable("candle", "paperback"),
                StackFromTable("flower vase", "candle"),
            )
        ),
    ),
)


def planner_examples() -> list[FewShotExample]:
    return [example.for_planner() for example in DEFAULT_EXAMPLES]


def parser_examples(full_problem: bool = False) -> list[FewShotExample]:
    return [example.for_parser(full_problem) for example in DEFAULT_EXAMPLES]


def _check_size(examples: Sequence[FewShotExample]) -> None:
    if len(examples) != FEW_SHOT_SIZE:
        raise ValueError(f"Expected {FEW_SHOT_SIZE} examples, got {len(examples)}")


def check_disjoint(examples: Iterable[FewShotExample], problems: Iterable[Problem]) -> None:
    """Reject evaluated problems that repeat a header example.

    Two problems repeat when they share the initial state and the goal.
    """
    seen = {(example.problem.init, example.problem.goal) for example in examples}
    for problem in problems:
        if (problem.init, problem.goal) in seen:
            raise ValueError(f"Problem {problem.id!r} repeats a few-shot example")


def build_planner_prompt(examples: Sequence[FewShotExample], problem: Problem) -> str:
    """Header of solved examples followed by the query, ending at "Actions:\\n"."""
    _check_size(examples)
    blocks = [
        f"{render_problem(example.problem)}\n{HEADER_ACTIONS}\n{example.solution_text}\n"
        for example in examples
    ]
    blocks.append(f"{render_problem(problem)}\n{HEADER_ACTIONS}\n")
    return "".join(blocks)


def build_parser_prompt(
    examples: Sequence[FewShotExample], problem: Problem, full_problem: bool = False
) -> str:
    """Header of parsed examples followed by the query, ending at an open parenthesis.

    With `full_problem`, examples show whole problem documents instead of
    goal predicates.
    """
    _check_size(examples)
    header = HEADER_PDDL_PROBLEM if full_problem else HEADER_GOAL_PREDICATE
    blocks = [
        f"{render_problem(example.problem)}\n{header}\n{example.solution_text}{PARSER_STOP}\n"
        for example in examples
    ]
    blocks.append(f"{render_problem(problem)}\n{header}\n(")
    return "".join(blocks)
