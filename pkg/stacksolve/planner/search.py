"""Forward state-space search over a compiled integer encoding of the domain.

A state is a tuple `below` where `below[i]` is the index of the object under
object `i` (in `Problem.objects` order), or `TABLE`.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import time
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

from ..const import BUDGET_CHECK_INTERVAL, STRATEGY_ASTAR
from ..core import (
    Clear,
    GroundAction,
    On,
    OnTable,
    Plan,
    Problem,
    Stack,
    StackFromTable,
    Unstack,
)
from .config import PlannerConfig

_LOGGER = logging.getLogger(__name__)

TABLE = -1

type Encoded = tuple[int, ...]
type Move = tuple[int, int, int]  # (object, source, destination)
type GoalTest = tuple[int, int, int]  # (kind, object, other)

_KIND_ON = 0
_KIND_ON_TABLE = 1
_KIND_CLEAR = 2


@dataclass(frozen=True, slots=True)
class Solved:
    plan: Plan
    expansions: int


@dataclass(frozen=True, slots=True)
class Unsolvable:
    """The reachable space within the plan-length limit holds no goal state."""

    expansions: int = 0


@dataclass(frozen=True, slots=True)
class ResourceExhausted:
    """The expansion cap or the time budget was hit first."""

    expansions: int


type SolveResult = Solved | Unsolvable | ResourceExhausted


class _BudgetExceeded(Exception):
    pass


class _Compiled:
    """Problem in index form plus move decoding."""

    def __init__(self, problem: Problem) -> None:
        self.names = problem.names
        index = {name: i for i, name in enumerate(self.names)}
        self.start: Encoded = tuple(
            TABLE if (below := problem.init.support_of(name)) is None else index[below]
            for name in self.names
        )
        tests: list[GoalTest] = []
        for atom in problem.goal.atoms:
            match atom:
                case On(above=above, below=below):
                    tests.append((_KIND_ON, index[above], index[below]))
                case OnTable(obj=obj):
                    tests.append((_KIND_ON_TABLE, index[obj], TABLE))
                case Clear(obj=obj):
                    tests.append((_KIND_CLEAR, index[obj], TABLE))
        self.goal = tuple(tests)

    def unmet(self, state: Encoded) -> int:
        occupied = set(state)
        count = 0
        for kind, obj, other in self.goal:
            if kind == _KIND_CLEAR:
                count += obj in occupied
            else:
                count += state[obj] != other
        return count

    def successors(self, state: Encoded) -> Iterator[tuple[Move, Encoded]]:
        """Clear objects in index order; the table move before object destinations."""
        occupied = set(state)
        clear = [i for i in range(len(state)) if i not in occupied]
        for obj in clear:
            source = state[obj]
            if source != TABLE:
                yield (obj, source, TABLE), state[:obj] + (TABLE,) + state[obj + 1 :]
            for dest in clear:
                if dest != obj:
                    yield (obj, source, dest), state[:obj] + (dest,) + state[obj + 1 :]

    def decode(self, move: Move) -> GroundAction:
        obj, source, dest = move
        if dest == TABLE:
            return Unstack(self.names[obj], self.names[source])
        if source == TABLE:
            return StackFromTable(self.names[obj], self.names[dest])
        return Stack(self.names[obj], self.names[source], self.names[dest])

    def plan(self, parents: dict[Encoded, tuple[Encoded, Move] | None], state: Encoded) -> Plan:
        moves: list[Move] = []
        while (link := parents[state]) is not None:
            state, move = link
            moves.append(move)
        return Plan(tuple(self.decode(move) for move in reversed(moves)))


class _Budget:
    def __init__(self, config: PlannerConfig) -> None:
        self.max_expansions = config.max_expansions
        self.deadline = (
            time.monotonic() + config.time_budget_s if config.time_budget_s is not None else None
        )
        self.expansions = 0

    def spend(self) -> None:
        if self.expansions >= self.max_expansions:
            raise _BudgetExceeded
        self.expansions += 1
        if (
            self.deadline is not None
            and self.expansions % BUDGET_CHECK_INTERVAL == 0
            and time.monotonic() > self.deadline
        ):
            raise _BudgetExceeded


def solve(problem: Problem, config: PlannerConfig | None = None) -> SolveResult:
    """Search for a plan reaching the problem's goal.

    BFS returns a shortest plan; A* uses f = g + number of unmet goal atoms.
    Both break ties first in, first out and never revisit a state at an
    equal or greater depth, so results are deterministic.
    """
    config = config or PlannerConfig()
    compiled = _Compiled(problem)
    if compiled.unmet(compiled.start) == 0:
        return Solved(Plan(), 0)
    limit = config.plan_length_limit(len(compiled.names))
    budget = _Budget(config)
    search = _astar if config.strategy == STRATEGY_ASTAR else _bfs
    try:
        result = search(compiled, limit, budget)
    except _BudgetExceeded:
        _LOGGER.debug(
            "[Planner] %s: budget exhausted after %d expansions", problem.id, budget.expansions
        )
        return ResourceExhausted(budget.expansions)
    _LOGGER.debug(
        "[Planner] %s: %s (%s) after %d expansions",
        problem.id,
        type(result).__name__,
        config.strategy,
        result.expansions,
    )
    return result


def _bfs(compiled: _Compiled, limit: int, budget: _Budget) -> Solved | Unsolvable:
    parents: dict[Encoded, tuple[Encoded, Move] | None] = {compiled.start: None}
    frontier: deque[tuple[Encoded, int]] = deque([(compiled.start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        if depth >= limit:
            continue
        budget.spend()
        for move, child in compiled.successors(state):
            if child in parents:
                continue
            parents[child] = (state, move)
            if compiled.unmet(child) == 0:
                return Solved(compiled.plan(parents, child), budget.expansions)
            frontier.append((child, depth + 1))
    return Unsolvable(budget.expansions)


def _astar(compiled: _Compiled, limit: int, budget: _Budget) -> Solved | Unsolvable:
    counter = itertools.count()
    best_g: dict[Encoded, int] = {compiled.start: 0}
    parents: dict[Encoded, tuple[Encoded, Move] | None] = {compiled.start: None}
    frontier: list[tuple[int, int, int, Encoded]] = [
        (compiled.unmet(compiled.start), next(counter), 0, compiled.start)
    ]
    while frontier:
        _, _, g, state = heapq.heappop(frontier)
        if g > best_g[state]:
            continue
        if compiled.unmet(state) == 0:
            return Solved(compiled.plan(parents, state), budget.expansions)
        if g >= limit:
            continue
        budget.spend()
        for move, child in compiled.successors(state):
            child_g = g + 1
            if child_g >= best_g.get(child, child_g + 1):
                continue
            best_g[child] = child_g
            parents[child] = (state, move)
            heapq.heappush(
                frontier, (child_g + compiled.unmet(child), next(counter), child_g, child)
            )
    return Unsolvable(budget.expansions)
