"""Build benchmark families and whole datasets."""

from __future__ import annotations

import logging

import numpy as np

from ..const import FAMILY_ATTEMPTS
from ..core import Clear, Fact, Goal, ObjectId, OnTable, Problem, WorldState, implies
from ..exceptions import GenerationError
from ..grammar import render_problem
from ..planner import PlannerConfig, Solved, solve
from .models import BenchmarkItem, Condition, GenConfig, item_id
from .sampling import (
    choose,
    family_rng,
    ood_swap,
    sample_initial_configuration,
    sample_target_specification,
)

_LOGGER = logging.getLogger(__name__)

_CHECK_CONFIG = PlannerConfig()


def _initial_atom(rng: np.random.Generator, target_facts: list[Fact], init: WorldState) -> Fact:
    # A single-object atom that the initial state does not already satisfy.
    unmet = [atom for atom in target_facts if atom not in init.facts]
    preferred = [atom for atom in unmet if isinstance(atom, (Clear, OnTable))]
    return choose(rng, preferred or unmet, 1)[0]


def _open_atoms(target_facts: list[Fact], chosen: list[Fact], objects: tuple[ObjectId, ...]) -> list[Fact]:
    return [atom for atom in target_facts if not implies(chosen, atom, objects)]


def _goals(
    rng: np.random.Generator,
    config: GenConfig,
    objects: tuple[ObjectId, ...],
    target_facts: list[Fact],
    init: WorldState,
) -> tuple[list[Fact], list[Fact], list[Fact], list[ObjectId]] | None:
    """Draw the three nested goals, or None when too few atoms stay open."""
    chosen = [_initial_atom(rng, target_facts, init)]
    for _ in range(config.n_many):
        pool = _open_atoms(target_facts, chosen, objects)
        if not pool:
            return None
        chosen.extend(choose(rng, pool, 1))
    first, second, *extras = chosen
    protected = {*first.objects, *second.objects}
    renamed, new_objects = ood_swap([second, *extras], protected, config.vocabulary, rng)
    return [first], [first, second], [first, *renamed], new_objects


def build_family(rng: np.random.Generator, config: GenConfig, family: int) -> list[BenchmarkItem]:
    """Sample one base problem and its three progressively constrained goals.

    Raises:
        GenerationError: if no solvable family is found within the attempt cap.
    """
    for attempt in range(1, FAMILY_ATTEMPTS + 1):
        objects, init = sample_initial_configuration(rng, config.n_objects, config.vocabulary)
        _, target_facts = sample_target_specification(rng, objects, init)
        goals = _goals(rng, config, objects, target_facts, init)
        if goals is None:
            _LOGGER.debug(
                "[BenchGen] family %d attempt %d ran out of open constraints, resampling",
                family,
                attempt,
            )
            continue
        initial, single, many, new_objects = goals

        extended_init = WorldState(
            init.facts
            | {OnTable(obj.name) for obj in new_objects}
            | {Clear(obj.name) for obj in new_objects}
        )
        problems = {
            Condition.INITIAL: Problem(
                item_id(config.seed, family, Condition.INITIAL), objects, init, Goal(tuple(initial))
            ),
            Condition.SINGLE_CONSTRAINT: Problem(
                item_id(config.seed, family, Condition.SINGLE_CONSTRAINT),
                objects,
                init,
                Goal(tuple(single)),
            ),
            Condition.MANY_CONSTRAINTS: Problem(
                item_id(config.seed, family, Condition.MANY_CONSTRAINTS),
                (*objects, *new_objects),
                extended_init,
                Goal(tuple(many)),
            ),
        }
        unsolved = [
            condition
            for condition, problem in problems.items()
            if not isinstance(solve(problem, _CHECK_CONFIG), Solved)
        ]
        if unsolved:
            _LOGGER.warning(
                "[BenchGen] family %d attempt %d unsolvable for %s, resampling",
                family,
                attempt,
                [str(condition) for condition in unsolved],
            )
            continue
        return [
            BenchmarkItem(
                id=problem.id,
                family=family,
                condition=condition,
                seed=config.seed,
                problem=problem,
                nl_text=render_problem(problem),
            )
            for condition, problem in problems.items()
        ]
    raise GenerationError(f"Family {family}: no solvable goals after {FAMILY_ATTEMPTS} attempts")


def generate_dataset(config: GenConfig) -> list[BenchmarkItem]:
    """Generate `config.count` families, three items each, in family order."""
    items: list[BenchmarkItem] = []
    for family in range(config.count):
        items.extend(build_family(family_rng(config.seed, family), config, family))
    _LOGGER.info(
        "[BenchGen] generated %d items (%d families, seed %d)", len(items), config.count, config.seed
    )
    return items
