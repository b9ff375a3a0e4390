"""Binary success coding of plans by simulation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

from ..core import Plan, Problem, execute_plan, satisfies
from ..exceptions import StackSolveError
from .search import ResourceExhausted, Solved, SolveResult, Unsolvable

_LOGGER = logging.getLogger(__name__)


class FailureReason(StrEnum):
    UNPARSEABLE = "unparseable"
    PRECONDITION_VIOLATION = "precondition-violation"
    GOAL_UNMET = "goal-unmet"
    NO_PLAN = "no-plan"
    RESOURCE_EXHAUSTED = "resource-exhausted"


@dataclass(frozen=True, slots=True)
class SimOutcome:
    """Simulation verdict; a plan succeeds exactly when there is no failure."""

    failure: FailureReason | None = None
    step: int | None = None
    detail: str | None = None

    @property
    def success(self) -> int:
        return int(self.failure is None)


def validate(problem: Problem, plan_or_error: Plan | SolveResult | StackSolveError) -> SimOutcome:
    """Score a plan against the problem's true initial state and goal.

    A parse error scores as unparseable. Planner results that carry no plan
    score as no-plan or resource-exhausted.
    """
    match plan_or_error:
        case StackSolveError() as err:
            return SimOutcome(FailureReason.UNPARSEABLE, detail=str(err))
        case Unsolvable():
            return SimOutcome(FailureReason.NO_PLAN)
        case ResourceExhausted(expansions=expansions):
            return SimOutcome(FailureReason.RESOURCE_EXHAUSTED, detail=f"{expansions} expansions")
        case Solved(plan=plan):
            return validate(problem, plan)
        case Plan() as plan:
            execution = execute_plan(problem.init, plan)
            if execution.failure is not None:
                return SimOutcome(
                    FailureReason.PRECONDITION_VIOLATION,
                    step=execution.failure.step,
                    detail=str(execution.failure.error),
                )
            if not satisfies(execution.state, problem.goal):
                return SimOutcome(FailureReason.GOAL_UNMET)
            return SimOutcome()
