"""Evaluation methods, per-item outcomes and their line-delimited file format."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path
from typing import Any

import voluptuous as vol

from .. import const
from ..benchgen import CONDITIONS, Condition
from ..core import GroundAction, Plan, Stack, StackFromTable, Unstack
from ..exceptions import InvalidActionError, SchemaError
from ..planner import FailureReason, SimOutcome

_LOGGER = logging.getLogger(__name__)


class Method(StrEnum):
    ORACLE = "oracle"
    PS_GRAMMAR = "ps-grammar"
    PS_LLM = "ps-llm"
    LLM_PLANNER = "llm-planner"


METHODS = tuple(Method)
LLM_METHODS = frozenset({Method.PS_LLM, Method.LLM_PLANNER})


@dataclass(frozen=True, slots=True)
class EvalOutcome:
    """Result of running one method on one benchmark item."""

    item_id: str
    family: int
    condition: Condition
    method: Method
    parse_ok: bool
    plan: Plan | None
    outcome: SimOutcome
    wall_time_ms: float = 0.0

    def __post_init__(self) -> None:
        if not self.parse_ok and self.outcome.failure is not FailureReason.UNPARSEABLE:
            raise ValueError("An unparsed item must score as unparseable")

    @property
    def success(self) -> int:
        return self.outcome.success


def _encode_action(action: GroundAction) -> list[str]:
    match action:
        case Unstack(obj=obj, source=source):
            return [const.ACTION_UNSTACK, obj, source]
        case StackFromTable(obj=obj, dest=dest):
            return [const.ACTION_STACK_FROM_TABLE, obj, dest]
        case Stack(obj=obj, source=source, dest=dest):
            return [const.ACTION_STACK, obj, source, dest]


def _decode_action(value: Any) -> GroundAction:
    match value:
        case [const.ACTION_UNSTACK, obj, source]:
            return Unstack(obj, source)
        case [const.ACTION_STACK_FROM_TABLE, obj, dest]:
            return StackFromTable(obj, dest)
        case [const.ACTION_STACK, obj, source, dest]:
            return Stack(obj, source, dest)
        case _:
            raise vol.Invalid(f"unknown action {value!r}")


def _decode_plan(value: Any) -> Plan | None:
    if value is None:
        return None
    if not isinstance(value, list):
        raise vol.Invalid("plan must be a list of actions")
    try:
        return Plan(tuple(_decode_action(action) for action in value))
    except InvalidActionError as err:
        raise vol.Invalid(str(err)) from err


OUTCOME_RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("item_id"): str,
        vol.Required("family"): vol.All(int, vol.Range(min=0)),
        vol.Required("condition"): vol.All(vol.In([c.value for c in CONDITIONS]), Condition),
        vol.Required("method"): vol.All(vol.In([m.value for m in METHODS]), Method),
        vol.Required("parse_ok"): bool,
        vol.Required("plan"): _decode_plan,
        vol.Required("success"): vol.In([0, 1]),
        vol.Required("failure"): vol.Any(
            None, vol.All(vol.In([r.value for r in FailureReason]), FailureReason)
        ),
        vol.Required("step"): vol.Any(None, vol.All(int, vol.Range(min=0))),
        vol.Required("detail"): vol.Any(None, str),
        vol.Required("wall_time_ms"): vol.All(vol.Coerce(float), vol.Range(min=0)),
    }
)


def outcome_to_record(outcome: EvalOutcome) -> dict[str, Any]:
    plan = outcome.plan
    return {
        "item_id": outcome.item_id,
        "family": outcome.family,
        "condition": outcome.condition.value,
        "method": outcome.method.value,
        "parse_ok": outcome.parse_ok,
        "plan": None if plan is None else [_encode_action(action) for action in plan],
        "success": outcome.success,
        "failure": None if outcome.outcome.failure is None else outcome.outcome.failure.value,
        "step": outcome.outcome.step,
        "detail": outcome.outcome.detail,
        "wall_time_ms": round(outcome.wall_time_ms, 3),
    }


def record_to_outcome(record: Any) -> EvalOutcome:
    data = OUTCOME_RECORD_SCHEMA(record)
    sim = SimOutcome(data["failure"], data["step"], data["detail"])
    if sim.success != data["success"]:
        raise vol.Invalid("success disagrees with failure")
    try:
        return EvalOutcome(
            item_id=data["item_id"],
            family=data["family"],
            condition=data["condition"],
            method=data["method"],
            parse_ok=data["parse_ok"],
            plan=data["plan"],
            outcome=sim,
            wall_time_ms=data["wall_time_ms"],
        )
    except ValueError as err:
        raise vol.Invalid(str(err)) from err


def write_outcomes(outcomes: Iterable[EvalOutcome], path: Path) -> int:
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for outcome in outcomes:
            handle.write(json.dumps(outcome_to_record(outcome), ensure_ascii=False) + "\n")
            count += 1
    _LOGGER.info("[Eval] wrote %d outcomes to %s", count, path)
    return count


def read_outcomes(path: Path) -> list[EvalOutcome]:
    """Read a results file.

    Raises:
        SchemaError: naming the first malformed line.
    """
    outcomes: list[EvalOutcome] = []
    with path.open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                outcomes.append(record_to_outcome(json.loads(line)))
            except json.JSONDecodeError as err:
                raise SchemaError(number, f"invalid JSON: {err.msg}") from err
            except vol.Invalid as err:
                raise SchemaError(number, str(err)) from err
    return outcomes
