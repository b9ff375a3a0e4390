"""Planner configuration."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import voluptuous as vol

from ..const import DEFAULT_MAX_EXPANSIONS, STRATEGIES, STRATEGY_BFS

CONF_STRATEGY = "strategy"
CONF_MAX_EXPANSIONS = "max_expansions"
CONF_MAX_PLAN_LENGTH = "max_plan_length"
CONF_TIME_BUDGET = "time_budget_s"

PLANNER_CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_STRATEGY, default=STRATEGY_BFS): vol.In(STRATEGIES),
        vol.Optional(CONF_MAX_EXPANSIONS, default=DEFAULT_MAX_EXPANSIONS): vol.All(
            int, vol.Range(min=1)
        ),
        vol.Optional(CONF_MAX_PLAN_LENGTH, default=None): vol.Any(
            None, vol.All(int, vol.Range(min=1))
        ),
        vol.Optional(CONF_TIME_BUDGET, default=None): vol.Any(
            None, vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False))
        ),
    }
)


@dataclass(frozen=True, slots=True)
class PlannerConfig:
    """Search settings.

    `max_plan_length` defaults to twice the object count; `time_budget_s`
    is unbounded when None.
    """

    strategy: str = STRATEGY_BFS
    max_expansions: int = DEFAULT_MAX_EXPANSIONS
    max_plan_length: int | None = None
    time_budget_s: float | None = None

    def __post_init__(self) -> None:
        try:
            PLANNER_CONFIG_SCHEMA(self.as_dict())
        except vol.Invalid as err:
            raise ValueError(f"Invalid planner config: {err}") from err

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> PlannerConfig:
        try:
            values = PLANNER_CONFIG_SCHEMA(dict(data))
        except vol.Invalid as err:
            raise ValueError(f"Invalid planner config: {err}") from err
        return cls(**values)

    def as_dict(self) -> dict[str, Any]:
        return {
            CONF_STRATEGY: self.strategy,
            CONF_MAX_EXPANSIONS: self.max_expansions,
            CONF_MAX_PLAN_LENGTH: self.max_plan_length,
            CONF_TIME_BUDGET: self.time_budget_s,
        }

    def plan_length_limit(self, n_objects: int) -> int:
        return self.max_plan_length if self.max_plan_length is not None else 2 * n_objects
