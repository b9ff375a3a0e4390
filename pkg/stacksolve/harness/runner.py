"""Run evaluation methods over benchmark items."""

from __future__ import annotations

import asyncio
import logging
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..benchgen import BenchmarkItem
from ..const import DEFAULT_ITEM_TIME_BUDGET, DEFAULT_MAX_IN_FLIGHT
from ..core import Plan, Problem
from ..exceptions import (
    InconsistentStateError,
    ParseError,
    ReplayMissError,
    TransportError,
)
from ..grammar import Vocabulary, parse_plan_nl, parse_problem_nl
from ..llm import (
    FULL_PROBLEM_PARAMS,
    PARSER_PARAMS,
    PLANNER_PARAMS,
    CompletionParams,
    FewShotExample,
    Transport,
    build_parser_prompt,
    build_planner_prompt,
    check_disjoint,
    parser_examples,
    planner_examples,
)
from ..pddl import parse_pddl_goal, parse_pddl_problem
from ..planner import FailureReason, PlannerConfig, SimOutcome, Solved, solve, validate
from .models import LLM_METHODS, EvalOutcome, Method

_LOGGER = logging.getLogger(__name__)

_PARSE_ERRORS = (ParseError, InconsistentStateError)


def _default_planner_config() -> PlannerConfig:
    return PlannerConfig(time_budget_s=DEFAULT_ITEM_TIME_BUDGET)


@dataclass
class Evaluator:
    """Dependencies shared by every item evaluation.

    `transport` is required only for the LLM methods. With `fail_open`, a
    transport failure scores the item as unparseable instead of aborting.
    """

    planner_config: PlannerConfig = field(default_factory=_default_planner_config)
    vocabulary: Vocabulary = field(default_factory=Vocabulary.default)
    transport: Transport | None = None
    planner_examples: Sequence[FewShotExample] = field(default_factory=planner_examples)
    parser_examples: Sequence[FewShotExample] | None = None
    max_in_flight: int = DEFAULT_MAX_IN_FLIGHT
    fail_open: bool = False
    llm_parses_init: bool = False

    def __post_init__(self) -> None:
        if self.parser_examples is None:
            self.parser_examples = parser_examples(full_problem=self.llm_parses_init)
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be positive")

    async def evaluate(
        self, items: Sequence[BenchmarkItem], methods: Iterable[Method]
    ) -> list[EvalOutcome]:
        """Evaluate every (item, method) pair; outcomes sorted by item id, then method."""
        methods = list(methods)
        if any(method in LLM_METHODS for method in methods):
            if self.transport is None:
                raise ValueError("LLM methods need a transport")
            problems = [item.problem for item in items]
            check_disjoint(self.planner_examples, problems)
            check_disjoint(self.parser_examples or (), problems)
        semaphore = asyncio.Semaphore(self.max_in_flight)

        async def bounded(method: Method, item: BenchmarkItem) -> EvalOutcome:
            async with semaphore:
                return await self.run_item(method, item)

        outcomes = await asyncio.gather(
            *(bounded(method, item) for item in items for method in methods)
        )
        _LOGGER.info("[Eval] evaluated %d items x %d methods", len(items), len(methods))
        return sorted(outcomes, key=lambda outcome: (outcome.item_id, outcome.method.value))

    async def run_item(self, method: Method, item: BenchmarkItem) -> EvalOutcome:
        """Run one method's pipeline on one item and score the result.

        Raises:
            ReplayMissError, TransportError: unless `fail_open` is set.
        """
        started = time.perf_counter()
        try:
            plan, outcome = await self._pipeline(method, item)
        except (ReplayMissError, TransportError) as err:
            if not self.fail_open:
                raise
            _LOGGER.warning("[Eval] %s/%s: %s, scored as unparseable", item.id, method, err)
            plan, outcome = None, validate(item.problem, err)
        elapsed = (time.perf_counter() - started) * 1000
        _LOGGER.debug("[Eval] %s/%s success=%d", item.id, method, outcome.success)
        return EvalOutcome(
            item_id=item.id,
            family=item.family,
            condition=item.condition,
            method=method,
            parse_ok=outcome.failure is not FailureReason.UNPARSEABLE,
            plan=plan,
            outcome=outcome,
            wall_time_ms=elapsed,
        )

    async def _pipeline(
        self, method: Method, item: BenchmarkItem
    ) -> tuple[Plan | None, SimOutcome]:
        match method:
            case Method.ORACLE:
                return self._solve_and_score(item.problem, item)
            case Method.PS_GRAMMAR:
                try:
                    parsed = parse_problem_nl(item.nl_text, item.id, self.vocabulary)
                except _PARSE_ERRORS as err:
                    return None, validate(item.problem, err)
                return self._solve_and_score(parsed, item)
            case Method.PS_LLM:
                try:
                    parsed = await self._llm_parse(item)
                except _PARSE_ERRORS as err:
                    return None, validate(item.problem, err)
                return self._solve_and_score(parsed, item)
            case Method.LLM_PLANNER:
                prompt = build_planner_prompt(self.planner_examples, item.problem)
                completion = await self._complete(prompt, PLANNER_PARAMS)
                try:
                    plan = parse_plan_nl(completion, item.problem.init)
                except _PARSE_ERRORS as err:
                    return None, validate(item.problem, err)
                return plan, validate(item.problem, plan)

    def _solve_and_score(
        self, parsed: Problem, item: BenchmarkItem
    ) -> tuple[Plan | None, SimOutcome]:
        # Plans are scored against the item's own problem, not the parse.
        result = solve(parsed, self.planner_config)
        plan = result.plan if isinstance(result, Solved) else None
        return plan, validate(item.problem, result)

    async def _llm_parse(self, item: BenchmarkItem) -> Problem:
        assert self.parser_examples is not None
        prompt = build_parser_prompt(self.parser_examples, item.problem, self.llm_parses_init)
        if self.llm_parses_init:
            completion = await self._complete(prompt, FULL_PROBLEM_PARAMS)
            return parse_pddl_problem("(" + completion, self.vocabulary)
        completion = await self._complete(prompt, PARSER_PARAMS)
        init = parse_problem_nl(item.nl_text, item.id, self.vocabulary)
        goal = parse_pddl_goal("(" + completion, init.names)
        return Problem(item.id, init.objects, init.init, goal)

    async def _complete(self, prompt: str, params: CompletionParams) -> str:
        if self.transport is None:
            raise TransportError("No transport configured")
        return await self.transport.complete(prompt, params)


async def run_item(method: Method, item: BenchmarkItem, deps: Evaluator) -> EvalOutcome:
    """Evaluate a single item with `deps`."""
    return await deps.run_item(method, item)
