"""Benchmark items and generation settings."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import voluptuous as vol

from ..const import DEFAULT_COUNT, DEFAULT_MANY, DEFAULT_OBJECTS, DEFAULT_SEED
from ..core import Problem
from ..grammar import Vocabulary


class Condition(StrEnum):
    """Goal conditions of one family, from least to most constrained."""

    INITIAL = "initial"
    SINGLE_CONSTRAINT = "single-constraint"
    MANY_CONSTRAINTS = "many-constraints"


CONDITIONS = tuple(Condition)

CONF_SEED = "seed"
CONF_COUNT = "count"
CONF_OBJECTS = "n_objects"
CONF_MANY = "n_many"


def _many_within_objects(values: dict[str, Any]) -> dict[str, Any]:
    if values[CONF_MANY] > values[CONF_OBJECTS]:
        raise vol.Invalid(f"{CONF_MANY} may not exceed {CONF_OBJECTS}")
    return values


GEN_CONFIG_SCHEMA = vol.All(
    vol.Schema(
        {
            vol.Required(CONF_SEED, default=DEFAULT_SEED): vol.All(
                int, vol.Range(min=0, max=2**64 - 1)
            ),
            vol.Required(CONF_COUNT, default=DEFAULT_COUNT): vol.All(int, vol.Range(min=1)),
            vol.Required(CONF_OBJECTS, default=DEFAULT_OBJECTS): vol.All(int, vol.Range(min=2)),
            vol.Required(CONF_MANY, default=DEFAULT_MANY): vol.All(int, vol.Range(min=2)),
        }
    ),
    _many_within_objects,
)


@dataclass(frozen=True)
class GenConfig:
    """Generation settings; validated on construction.

    Raises:
        ValueError: if a field is out of range or the vocabulary is too small.
    """

    seed: int = DEFAULT_SEED
    count: int = DEFAULT_COUNT
    n_objects: int = DEFAULT_OBJECTS
    n_many: int = DEFAULT_MANY
    vocabulary: Vocabulary = field(default_factory=Vocabulary.default)

    def __post_init__(self) -> None:
        try:
            GEN_CONFIG_SCHEMA(
                {
                    CONF_SEED: self.seed,
                    CONF_COUNT: self.count,
                    CONF_OBJECTS: self.n_objects,
                    CONF_MANY: self.n_many,
                }
            )
        except vol.Invalid as err:
            raise ValueError(f"Invalid generation config: {err}") from err
        if len(self.vocabulary.household) < self.n_objects:
            raise ValueError(
                f"Vocabulary has {len(self.vocabulary.household)} household names,"
                f" {self.n_objects} needed"
            )
        if len(self.vocabulary.ood) < self.n_many - 1:
            raise ValueError(
                f"Vocabulary has {len(self.vocabulary.ood)} ood names, {self.n_many - 1} needed"
            )


@dataclass(frozen=True)
class BenchmarkItem:
    """A generated problem tagged with its condition and family."""

    id: str
    family: int
    condition: Condition
    seed: int
    problem: Problem
    nl_text: str


def item_id(seed: int, family: int, condition: Condition) -> str:
    return f"{seed}-{family}-{condition.value}"
