"""World-state operations: canonicalization, action semantics and plan execution."""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from ..const import MAX_ENUMERATED_OBJECTS
from ..exceptions import (
    InconsistentStateError,
    PreconditionViolationError,
    TooManyObjectsError,
)
from .models import (
    Clear,
    Fact,
    Goal,
    GroundAction,
    ObjectId,
    On,
    OnTable,
    Plan,
    Stack,
    StackFromTable,
    Unstack,
    WorldState,
)

_LOGGER = logging.getLogger(__name__)


def _name(obj: str | ObjectId) -> str:
    return obj.name if isinstance(obj, ObjectId) else obj


def canonicalize(facts: Iterable[Fact], objects: Iterable[str | ObjectId]) -> WorldState:
    """Validate a fact set and return it as a canonical world state.

    Clear facts are recomputed from the support facts. Stated Clear facts
    must agree with them; missing ones are filled in.

    Raises:
        InconsistentStateError: if an object lacks a unique support, two
            objects share an occupant slot, supports form a cycle, or a fact
            mentions an object outside `objects`.
    """
    names = {_name(obj) for obj in objects}
    supports: dict[str, str | None] = {}
    occupants: dict[str, str] = {}
    stated_clear: set[str] = set()

    for fact in facts:
        for name in fact.objects:
            if name not in names:
                raise InconsistentStateError(f"unknown object {name!r}")
        match fact:
            case OnTable(obj=obj):
                _set_support(supports, obj, None)
            case On(above=above, below=below):
                _set_support(supports, above, below)
                current = occupants.get(below)
                if current is not None and current != above:
                    raise InconsistentStateError(
                        f"both {current!r} and {above!r} are on {below!r}"
                    )
                occupants[below] = above
            case Clear(obj=obj):
                stated_clear.add(obj)

    unsupported = sorted(names - supports.keys())
    if unsupported:
        raise InconsistentStateError(f"no support stated for {', '.join(map(repr, unsupported))}")

    for name in sorted(names):
        seen = {name}
        below = supports[name]
        while below is not None:
            if below in seen:
                raise InconsistentStateError(f"cycle through {name!r}")
            seen.add(below)
            below = supports[below]

    for name in sorted(stated_clear):
        if name in occupants:
            raise InconsistentStateError(
                f"{name!r} is stated clear but {occupants[name]!r} is on it"
            )

    result: set[Fact] = {
        OnTable(name) if below is None else On(name, below) for name, below in supports.items()
    }
    result.update(Clear(name) for name in names if name not in occupants)
    return WorldState(frozenset(result))


def _set_support(supports: dict[str, str | None], name: str, below: str | None) -> None:
    if name in supports and supports[name] != below:
        raise InconsistentStateError(f"{name!r} has more than one support")
    supports[name] = below


def state_from_stacks(stacks: Iterable[Sequence[str]]) -> WorldState:
    """Build a state from stacks listed bottom to top."""
    facts: set[Fact] = set()
    seen: set[str] = set()
    for stack in stacks:
        if not stack:
            continue
        for name in stack:
            if name in seen:
                raise InconsistentStateError(f"{name!r} appears in two places")
            seen.add(name)
        facts.add(OnTable(stack[0]))
        facts.update(On(above, below) for below, above in itertools.pairwise(stack))
        facts.add(Clear(stack[-1]))
    return WorldState(frozenset(facts))


def apply(state: WorldState, action: GroundAction) -> WorldState:
    """Return the successor of `state` under `action`.

    Raises:
        PreconditionViolationError: naming the first missing precondition.
    """
    for fact in action.preconditions:
        if fact not in state.facts:
            raise PreconditionViolationError(action, fact)
    return WorldState((state.facts - action.delete_effects) | action.add_effects)


def satisfies(state: WorldState, goal: Goal) -> bool:
    """Return True when every goal atom holds in `state`."""
    return all(atom in state.facts for atom in goal.atoms)


def implies(atoms: Iterable[Fact], atom: Fact, objects: Iterable[str | ObjectId]) -> bool:
    """Return True when every state over `objects` satisfying `atoms` also has `atom`.

    `atoms` together with `atom` must hold in some state. Objects that
    `atoms` leaves unplaced can all rest on the table.
    """
    known = set(atoms)
    if atom in known:
        return True
    supports = {fact.above: fact.below for fact in known if isinstance(fact, On)}
    covered = set(supports.values())

    def above(upper: str, lower: str) -> bool:
        current = upper
        while current in supports:
            current = supports[current]
            if current == lower:
                return True
        return False

    names = [_name(obj) for obj in objects]
    match atom:
        case On():
            return False
        case OnTable(obj=obj):
            # obj could go on any free object that is not above it.
            return not any(
                other != obj
                and other not in covered
                and Clear(other) not in known
                and not above(other, obj)
                for other in names
            )
        case Clear(obj=obj):
            # Any unplaced object that obj is not above could go on it.
            return not any(
                other != obj
                and other not in supports
                and OnTable(other) not in known
                and not above(obj, other)
                for other in names
            )


@dataclass(frozen=True, slots=True)
class StepFailure:
    """The first plan step whose preconditions did not hold."""

    step: int
    error: PreconditionViolationError


@dataclass(frozen=True, slots=True)
class PlanExecution:
    """Outcome of folding a plan over a state."""

    state: WorldState
    failure: StepFailure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def execute_plan(init: WorldState, plan: Plan | Iterable[GroundAction]) -> PlanExecution:
    """Apply actions in order, stopping at the first invalid step.

    On failure the returned state is the one before the failing step.
    """
    state = init
    for step, action in enumerate(plan):
        try:
            state = apply(state, action)
        except PreconditionViolationError as err:
            _LOGGER.debug("Plan fails at step %d: %s", step, err)
            return PlanExecution(state, StepFailure(step, err))
    return PlanExecution(state)


def enumerate_configurations(objects: Iterable[str | ObjectId]) -> tuple[WorldState, ...]:
    """Return every canonical state over `objects`, each exactly once.

    The order is deterministic for a given object order.

    Raises:
        TooManyObjectsError: above six objects.
    """
    names = tuple(_name(obj) for obj in objects)
    if not names:
        raise ValueError("At least one object is required")
    if len(set(names)) != len(names):
        raise ValueError("Object names must be unique")
    if len(names) > MAX_ENUMERATED_OBJECTS:
        raise TooManyObjectsError(
            f"Refusing to enumerate {len(names)} objects (limit {MAX_ENUMERATED_OBJECTS})"
        )
    return _enumerate(names)


@functools.lru_cache(maxsize=128)
def _enumerate(names: tuple[str, ...]) -> tuple[WorldState, ...]:
    # Each object is inserted into every slot of every layout of its predecessors.
    layouts: list[tuple[tuple[str, ...], ...]] = [()]
    for name in names:
        extended: list[tuple[tuple[str, ...], ...]] = []
        for stacks in layouts:
            extended.append((*stacks, (name,)))
            for index, stack in enumerate(stacks):
                for position in range(len(stack) + 1):
                    grown = (*stack[:position], name, *stack[position:])
                    extended.append((*stacks[:index], grown, *stacks[index + 1 :]))
        layouts = extended
    return tuple(state_from_stacks(stacks) for stacks in layouts)


def ground_actions(objects: Iterable[str | ObjectId]) -> Iterator[GroundAction]:
    """Yield every well-formed ground action over `objects`."""
    names = sorted(_name(obj) for obj in objects)
    for obj, other in itertools.permutations(names, 2):
        yield Unstack(obj, other)
        yield StackFromTable(obj, other)
    for obj, source, dest in itertools.permutations(names, 3):
        yield Stack(obj, source, dest)


def successors(state: WorldState) -> Iterator[tuple[GroundAction, WorldState]]:
    """Yield `(action, next_state)` for each action applicable in `state`."""
    for action in ground_actions(state.objects):
        try:
            yield action, apply(state, action)
        except PreconditionViolationError:
            continue
