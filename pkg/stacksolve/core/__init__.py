"""World-state representation and action semantics for the stacking domain."""

from .models import (
    Clear,
    Fact,
    Goal,
    GroundAction,
    ObjectId,
    On,
    OnTable,
    Plan,
    Problem,
    Stack,
    StackFromTable,
    Unstack,
    WorldState,
)
from .state import (
    PlanExecution,
    StepFailure,
    apply,
    canonicalize,
    enumerate_configurations,
    execute_plan,
    ground_actions,
    implies,
    satisfies,
    state_from_stacks,
    successors,
)

__all__ = [
    "Clear",
    "Fact",
    "Goal",
    "GroundAction",
    "ObjectId",
    "On",
    "OnTable",
    "Plan",
    "PlanExecution",
    "Problem",
    "Stack",
    "StackFromTable",
    "StepFailure",
    "Unstack",
    "WorldState",
    "apply",
    "canonicalize",
    "enumerate_configurations",
    "execute_plan",
    "ground_actions",
    "implies",
    "satisfies",
    "state_from_stacks",
    "successors",
]
