"""Unit tests for the symbolic planner and the plan validator."""

import itertools
from collections import deque
from unittest.mock import patch

import pytest
from hypothesis import given, settings

from stacksolve.core import (
    Clear,
    Fact,
    Goal,
    ObjectId,
    On,
    OnTable,
    Plan,
    Problem,
    StackFromTable,
    Unstack,
    WorldState,
    enumerate_configurations,
    successors,
)
from stacksolve.exceptions import UnparseablePlanError
from stacksolve.planner import (
    FailureReason,
    PlannerConfig,
    ResourceExhausted,
    Solved,
    Unsolvable,
    solve,
    validate,
)

from ..strategies import all_facts, problems

FOUR = ["plate", "keyboard", "candle", "notebook"]


def _with_goal(problem: Problem, *atoms: Fact) -> Problem:
    return Problem(problem.id, problem.objects, problem.init, Goal(atoms))


def _distances(start: WorldState) -> dict[WorldState, int]:
    """Reference breadth-first distances over the core successor function."""
    distances = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for _, after in successors(state):
            if after not in distances:
                distances[after] = distances[state] + 1
                queue.append(after)
    return distances


class TestSolve:
    """Test plan search."""

    def test_supplement_single_unstack(self, supplement_problem: Problem) -> None:
        """Test that the worked example needs one move found after one expansion."""
        result = solve(supplement_problem)
        assert result == Solved(Plan((Unstack("tissue box", "notebook"),)), 1)

    def test_goal_already_true(self, supplement_problem: Problem) -> None:
        """Test that a satisfied goal yields the empty plan without search."""
        problem = _with_goal(supplement_problem, Clear("tablet"), OnTable("writing pad"))
        assert solve(problem) == Solved(Plan(), 0)

    def test_contradictory_goal_unsolvable(self, supplement_problem: Problem) -> None:
        """Test exhausting the space without finding a goal state."""
        problem = _with_goal(supplement_problem, Clear("notebook"), On("tissue box", "notebook"))
        result = solve(problem)
        assert isinstance(result, Unsolvable)
        assert result.expansions > 0
        assert isinstance(solve(problem, PlannerConfig(strategy="astar")), Unsolvable)

    def test_plan_length_limit(self, supplement_problem: Problem) -> None:
        """Test that goals beyond the length limit count as unsolvable."""
        problem = _with_goal(supplement_problem, On("notebook", "tablet"))
        assert solve(problem, PlannerConfig(max_plan_length=1)) == Unsolvable(1)
        result = solve(problem, PlannerConfig(max_plan_length=2))
        assert isinstance(result, Solved)
        assert len(result.plan) == 2

    def test_expansion_cap(self, supplement_problem: Problem) -> None:
        """Test running out of expansions."""
        problem = _with_goal(supplement_problem, On("notebook", "tablet"))
        assert solve(problem, PlannerConfig(max_expansions=1)) == ResourceExhausted(1)

    def test_time_budget(self, supplement_problem: Problem) -> None:
        """Test running out of time."""
        problem = _with_goal(supplement_problem, On("notebook", "tablet"))
        with (
            patch("stacksolve.planner.search.BUDGET_CHECK_INTERVAL", 1),
            patch(
                "stacksolve.planner.search.time.monotonic",
                side_effect=itertools.count(0.0, 100.0),
            ),
        ):
            result = solve(problem, PlannerConfig(time_budget_s=1.0))
        assert result == ResourceExhausted(1)

    def test_bfs_plans_are_shortest(self) -> None:
        """Test BFS against reference distances for every start and single-atom goal."""
        objects = tuple(ObjectId(name) for name in FOUR)
        for init in enumerate_configurations(FOUR):
            distances = _distances(init)
            for atom in all_facts(FOUR):
                problem = Problem("bfs", objects, init, Goal((atom,)))
                shortest = min(d for state, d in distances.items() if atom in state.facts)
                result = solve(problem)
                assert isinstance(result, Solved)
                assert len(result.plan) == shortest
                assert validate(problem, result).success == 1

    @given(problems(max_objects=5))
    @settings(max_examples=200, derandomize=True, deadline=None)
    def test_astar_agrees_with_bfs(self, problem: Problem) -> None:
        """Test that A* plans are valid, never shorter and equally solvable."""
        bfs = solve(problem)
        astar = solve(problem, PlannerConfig(strategy="astar"))
        assert type(astar) is type(bfs)
        if isinstance(bfs, Solved) and isinstance(astar, Solved):
            assert validate(problem, astar).success == 1
            assert validate(problem, bfs).success == 1
            assert len(astar.plan) >= len(bfs.plan)

    def test_deterministic(self, supplement_problem: Problem) -> None:
        """Test that repeated searches agree exactly."""
        problem = _with_goal(supplement_problem, On("writing pad", "tissue box"), Clear("tablet"))
        for strategy in ("bfs", "astar"):
            config = PlannerConfig(strategy=strategy)
            assert solve(problem, config) == solve(problem, config)


class TestPlannerConfig:
    """Test planner settings."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"strategy": "dfs"},
            {"max_expansions": 0},
            {"max_plan_length": 0},
            {"time_budget_s": 0},
            {"time_budget_s": -1.0},
        ],
    )
    def test_invalid(self, kwargs: dict) -> None:
        """Test rejected settings."""
        with pytest.raises(ValueError):
            PlannerConfig(**kwargs)

    def test_from_dict(self) -> None:
        """Test schema coercion and defaults."""
        config = PlannerConfig.from_dict({"strategy": "astar", "time_budget_s": "2.5"})
        assert config == PlannerConfig(strategy="astar", time_budget_s=2.5)
        assert PlannerConfig.from_dict({}) == PlannerConfig()
        with pytest.raises(ValueError):
            PlannerConfig.from_dict({"depth": 3})

    def test_plan_length_limit(self) -> None:
        """Test the default limit of two moves per object."""
        assert PlannerConfig().plan_length_limit(4) == 8
        assert PlannerConfig(max_plan_length=3).plan_length_limit(4) == 3
        assert PlannerConfig.from_dict(PlannerConfig(max_plan_length=3).as_dict()).max_plan_length == 3


class TestValidate:
    """Test binary success coding."""

    def test_success(self, supplement_problem: Problem) -> None:
        """Test a plan that reaches the goal."""
        outcome = validate(supplement_problem, Plan((Unstack("tissue box", "notebook"),)))
        assert outcome.success == 1
        assert outcome.failure is None

    def test_precondition_violation(self, supplement_problem: Problem) -> None:
        """Test the worked example's language-model plan."""
        outcome = validate(supplement_problem, Plan((StackFromTable("tablet", "notebook"),)))
        assert outcome.success == 0
        assert outcome.failure == FailureReason.PRECONDITION_VIOLATION
        assert outcome.step == 0
        assert "(clear notebook)" in (outcome.detail or "")

    def test_goal_unmet(self, supplement_problem: Problem) -> None:
        """Test a valid plan that ends outside the goal."""
        plan = Plan((Unstack("tissue box", "notebook"), StackFromTable("tablet", "notebook")))
        outcome = validate(supplement_problem, plan)
        assert outcome.failure == FailureReason.GOAL_UNMET
        assert outcome.success == 0

    def test_planner_results(self, supplement_problem: Problem) -> None:
        """Test scoring of search results."""
        assert validate(supplement_problem, solve(supplement_problem)).success == 1
        assert validate(supplement_problem, Unsolvable(3)).failure == FailureReason.NO_PLAN
        exhausted = validate(supplement_problem, ResourceExhausted(5))
        assert exhausted.failure == FailureReason.RESOURCE_EXHAUSTED
        assert exhausted.detail == "5 expansions"

    def test_parse_error(self, supplement_problem: Problem) -> None:
        """Test that a parse error scores as unparseable."""
        outcome = validate(supplement_problem, UnparseablePlanError("Fly the tablet away."))
        assert outcome.failure == FailureReason.UNPARSEABLE
        assert "Fly the tablet away." in (outcome.detail or "")
