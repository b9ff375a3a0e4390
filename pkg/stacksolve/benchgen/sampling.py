"""Seeded samplers for configurations, goal atoms and out-of-distribution renaming."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np

from ..const import MAX_UNIFORM_SAMPLED_OBJECTS
from ..core import (
    Clear,
    Fact,
    ObjectId,
    On,
    OnTable,
    WorldState,
    enumerate_configurations,
    state_from_stacks,
)
from ..exceptions import VocabularyExhaustedError
from ..grammar import Vocabulary

_LOGGER = logging.getLogger(__name__)


def family_rng(seed: int, family: int) -> np.random.Generator:
    """Independent PCG64 substream for one family."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(family,))))


def sample_configuration(rng: np.random.Generator, names: Sequence[str]) -> WorldState:
    """Draw a configuration over `names`.

    Uniform over all configurations up to five objects. Above that, objects
    are placed one at a time on the table or on top of an existing stack,
    which is not uniform.
    """
    if len(names) <= MAX_UNIFORM_SAMPLED_OBJECTS:
        states = enumerate_configurations(names)
        return states[int(rng.integers(len(states)))]
    stacks: list[list[str]] = []
    for name in names:
        slot = int(rng.integers(len(stacks) + 1))
        if slot == len(stacks):
            stacks.append([name])
        else:
            stacks[slot].append(name)
    return state_from_stacks(stacks)


def sample_initial_configuration(
    rng: np.random.Generator, n_objects: int, vocabulary: Vocabulary
) -> tuple[tuple[ObjectId, ...], WorldState]:
    """Pick distinct household objects and a configuration over them."""
    if len(vocabulary.household) < n_objects:
        raise VocabularyExhaustedError(
            f"{n_objects} household names requested, {len(vocabulary.household)} available"
        )
    picks = rng.choice(len(vocabulary.household), size=n_objects, replace=False)
    objects = tuple(ObjectId(vocabulary.household[int(i)]) for i in picks)
    return objects, sample_configuration(rng, [obj.name for obj in objects])


def sample_target_specification(
    rng: np.random.Generator, objects: Sequence[ObjectId], init: WorldState
) -> tuple[WorldState, list[Fact]]:
    """Draw a target configuration different from `init`.

    Returns the target and its full fact list in canonical order.
    """
    names = [obj.name for obj in objects]
    if len(names) < 2:
        raise ValueError("A target different from the initial state needs two objects")
    while (target := sample_configuration(rng, names)) == init:
        continue
    return target, target.canonical_facts(names)


def choose(rng: np.random.Generator, pool: Sequence[Fact], k: int) -> list[Fact]:
    """Uniform sample of `k` atoms without replacement, in draw order."""
    return [pool[int(i)] for i in rng.choice(len(pool), size=k, replace=False)]


def rename_fact(fact: Fact, mapping: dict[str, str]) -> Fact:
    match fact:
        case On(above=above, below=below):
            return On(mapping.get(above, above), mapping.get(below, below))
        case OnTable(obj=obj):
            return OnTable(mapping.get(obj, obj))
        case Clear(obj=obj):
            return Clear(mapping.get(obj, obj))


def ood_swap(
    constraints: Sequence[Fact],
    protected: Iterable[str],
    vocabulary: Vocabulary,
    rng: np.random.Generator,
) -> tuple[list[Fact], list[ObjectId]]:
    """Rename unprotected household objects in every constraint but the first.

    Each renamed object maps to one fresh ood name everywhere it appears.

    Raises:
        VocabularyExhaustedError: if there are more objects to rename than
            ood names.
    """
    keep = set(protected)
    sources = [
        name
        for name in dict.fromkeys(n for fact in constraints[1:] for n in fact.objects)
        if name not in keep and not vocabulary.is_ood(name)
    ]
    if len(sources) > len(vocabulary.ood):
        raise VocabularyExhaustedError(
            f"{len(sources)} objects to rename, {len(vocabulary.ood)} ood names"
        )
    picks = rng.choice(len(vocabulary.ood), size=len(sources), replace=False)
    mapping = {
        source: vocabulary.ood[int(i)] for source, i in zip(sources, picks, strict=True)
    }
    renamed = [constraints[0], *(rename_fact(fact, mapping) for fact in constraints[1:])]
    if mapping:
        _LOGGER.debug("[BenchGen] ood renaming %s", mapping)
    return renamed, [ObjectId(name, ood=True) for name in mapping.values()]
