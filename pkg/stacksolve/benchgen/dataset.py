"""Line-delimited dataset files."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import voluptuous as vol

from .. import const
from ..const import PRED_CLEAR, PRED_ON, PRED_ON_TABLE, RNG_NAME
from ..core import Clear, Fact, Goal, ObjectId, On, OnTable, Problem, canonicalize
from ..exceptions import InconsistentStateError, InvalidFactError, SchemaError
from .models import CONDITIONS, BenchmarkItem, Condition

_LOGGER = logging.getLogger(__name__)


def fact_triple(fact: Fact) -> list[str]:
    match fact:
        case On(above=above, below=below):
            return [PRED_ON, above, below]
        case OnTable(obj=obj):
            return [PRED_ON_TABLE, obj]
        case Clear(obj=obj):
            return [PRED_CLEAR, obj]


def triple_fact(value: Any) -> Fact:
    """Validate and decode one fact triple."""
    if not isinstance(value, list) or not all(isinstance(part, str) for part in value):
        raise vol.Invalid(f"fact must be a list of strings, got {value!r}")
    match value:
        case [const.PRED_ON, above, below]:
            try:
                return On(above, below)
            except InvalidFactError as err:
                raise vol.Invalid(str(err)) from err
        case [const.PRED_ON_TABLE, obj]:
            return OnTable(obj)
        case [const.PRED_CLEAR, obj]:
            return Clear(obj)
        case _:
            raise vol.Invalid(f"unknown fact {value!r}")


OBJECT_SCHEMA = vol.Schema({vol.Required("name"): str, vol.Required("ood"): bool})

DATASET_RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("id"): str,
        vol.Required("family"): vol.All(int, vol.Range(min=0)),
        vol.Required("condition"): vol.All(vol.In([c.value for c in CONDITIONS]), Condition),
        vol.Required("seed"): vol.All(int, vol.Range(min=0)),
        vol.Required("rng"): RNG_NAME,
        vol.Required("objects"): vol.All([OBJECT_SCHEMA], vol.Length(min=1)),
        vol.Required("init"): [triple_fact],
        vol.Required("goal"): vol.All([triple_fact], vol.Length(min=1)),
        vol.Required("nl_text"): str,
    }
)


def item_to_record(item: BenchmarkItem) -> dict[str, Any]:
    problem = item.problem
    return {
        "id": item.id,
        "family": item.family,
        "condition": item.condition.value,
        "seed": item.seed,
        "rng": RNG_NAME,
        "objects": [{"name": obj.name, "ood": obj.ood} for obj in problem.objects],
        "init": [fact_triple(fact) for fact in problem.init_facts()],
        "goal": [fact_triple(atom) for atom in problem.goal.atoms],
        "nl_text": item.nl_text,
    }


def record_to_item(record: Any) -> BenchmarkItem:
    """Validate a decoded record and rebuild its item.

    Raises:
        vol.Invalid: if the record does not match the schema.
        InconsistentStateError: if the facts do not form a valid problem.
    """
    data = DATASET_RECORD_SCHEMA(record)
    objects = tuple(ObjectId(obj["name"], obj["ood"]) for obj in data["objects"])
    state = canonicalize(data["init"], objects)
    try:
        problem = Problem(data["id"], objects, state, Goal(tuple(data["goal"])))
    except ValueError as err:
        raise InconsistentStateError(str(err)) from err
    return BenchmarkItem(
        id=data["id"],
        family=data["family"],
        condition=data["condition"],
        seed=data["seed"],
        problem=problem,
        nl_text=data["nl_text"],
    )


def write_dataset(items: Iterable[BenchmarkItem], path: Path) -> int:
    """Write one JSON record per line; returns the record count."""
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for item in items:
            handle.write(json.dumps(item_to_record(item), ensure_ascii=False) + "\n")
            count += 1
    _LOGGER.info("[BenchGen] wrote %d items to %s", count, path)
    return count


def read_dataset(path: Path) -> list[BenchmarkItem]:
    """Read a dataset file.

    Raises:
        OSError: if the file cannot be read.
        SchemaError: naming the first malformed line.
    """
    items: list[BenchmarkItem] = []
    with path.open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                items.append(record_to_item(json.loads(line)))
            except json.JSONDecodeError as err:
                raise SchemaError(number, f"invalid JSON: {err.msg}") from err
            except (vol.Invalid, InconsistentStateError, ValueError) as err:
                raise SchemaError(number, str(err)) from err
    _LOGGER.debug("Read %d items from %s", len(items), path)
    return items
