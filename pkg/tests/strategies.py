"""Hypothesis strategies for stacking problems and plans."""

from __future__ import annotations

from hypothesis import strategies as st

from stacksolve.core import (
    Clear,
    Fact,
    Goal,
    GroundAction,
    ObjectId,
    On,
    OnTable,
    Plan,
    Problem,
    WorldState,
    state_from_stacks,
    successors,
)
from stacksolve.grammar import Vocabulary

VOCABULARY = Vocabulary.default()
ALL_NAMES = (*VOCABULARY.household, *VOCABULARY.ood)


def all_facts(names: list[str]) -> list[Fact]:
    facts: list[Fact] = [On(a, b) for a in names for b in names if a != b]
    facts.extend(OnTable(name) for name in names)
    facts.extend(Clear(name) for name in names)
    return facts


@st.composite
def object_names(draw: st.DrawFn, max_size: int = 6) -> list[str]:
    return draw(st.lists(st.sampled_from(ALL_NAMES), min_size=1, max_size=max_size, unique=True))


@st.composite
def world_states(draw: st.DrawFn, names: list[str]) -> WorldState:
    """A configuration over `names`: a shuffled order cut into stacks."""
    order = draw(st.permutations(names))
    cuts = draw(st.lists(st.booleans(), min_size=len(order) - 1, max_size=len(order) - 1))
    stacks: list[list[str]] = [[order[0]]]
    for name, cut in zip(order[1:], cuts, strict=True):
        if cut:
            stacks.append([name])
        else:
            stacks[-1].append(name)
    return state_from_stacks(stacks)


@st.composite
def problems(draw: st.DrawFn, max_objects: int = 6) -> Problem:
    names = draw(object_names(max_objects))
    state = draw(world_states(names))
    atoms = draw(st.lists(st.sampled_from(all_facts(names)), min_size=1, max_size=4, unique=True))
    objects = tuple(ObjectId(name, VOCABULARY.is_ood(name)) for name in names)
    problem_id = draw(st.from_regex(r"[a-z][a-z0-9-]{0,11}", fullmatch=True))
    return Problem(problem_id, objects, state, Goal(tuple(atoms)))


@st.composite
def valid_plans(draw: st.DrawFn, state: WorldState, max_steps: int = 8) -> Plan:
    """A random walk of applicable actions from `state`."""
    actions: list[GroundAction] = []
    for _ in range(draw(st.integers(0, max_steps))):
        options = list(successors(state))
        if not options:
            break
        action, state = options[draw(st.integers(0, len(options) - 1))]
        actions.append(action)
    return Plan(tuple(actions))
