"""Sentence templates: render problems and plans to text and parse them back."""

from __future__ import annotations

import logging
import re

from ..const import HEADER_GOAL, HEADER_INITIALLY
from ..core import (
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
    apply,
    canonicalize,
)
from ..exceptions import (
    InconsistentStateError,
    InvalidFactError,
    PreconditionViolationError,
    UnparseablePlanError,
    UnparseableSentenceError,
)
from .vocabulary import RESERVED_WORDS, Vocabulary

_LOGGER = logging.getLogger(__name__)

_WORD = r"(?!(?:{})\b)[a-z0-9]+".format("|".join(sorted(RESERVED_WORDS)))
_NAME = rf"{_WORD}(?: {_WORD})*"

ON_TABLE_TEMPLATE = "The {x} rests on the table."
ON_TEMPLATE = "The {x} is on the {y}."
CLEAR_TEMPLATE = "There is nothing on the {x}."
MOVE_TEMPLATE = "Move the {x} onto the {y}."
MOVE_TO_TABLE_TEMPLATE = "Move the {x} onto the table."

_ON_TABLE_RE = re.compile(rf"The (?P<x>{_NAME}) rests on the table\.")
_ON_RE = re.compile(rf"The (?P<x>{_NAME}) is on the (?P<y>{_NAME})\.")
_CLEAR_RE = re.compile(rf"There is nothing on the (?P<x>{_NAME})\.")
_MOVE_RE = re.compile(rf"Move the (?P<x>{_NAME}) onto the (?:(?P<table>table)|(?P<y>{_NAME}))\.")
_SENTENCE_SPLIT_RE = re.compile(r"(?<=\.)\s+")


def render_fact(fact: Fact) -> str:
    """Render one fact as a sentence."""
    match fact:
        case OnTable(obj=obj):
            return ON_TABLE_TEMPLATE.format(x=obj)
        case On(above=above, below=below):
            return ON_TEMPLATE.format(x=above, y=below)
        case Clear(obj=obj):
            return CLEAR_TEMPLATE.format(x=obj)


def parse_fact(line: str) -> Fact:
    """Parse one fact sentence.

    Raises:
        UnparseableSentenceError: if the line matches no fact template.
        InconsistentStateError: for an object said to be on itself.
    """
    sentence = line.strip()
    if match := _ON_TABLE_RE.fullmatch(sentence):
        return OnTable(match["x"])
    if match := _ON_RE.fullmatch(sentence):
        try:
            return On(match["x"], match["y"])
        except InvalidFactError as err:
            raise InconsistentStateError(str(err)) from err
    if match := _CLEAR_RE.fullmatch(sentence):
        return Clear(match["x"])
    raise UnparseableSentenceError(line)


def render_problem(problem: Problem) -> str:
    """Render the "Initially:" / "Goal:" block for a problem.

    Initial facts follow canonical stack order; goal atoms keep goal order.
    There is no trailing newline.
    """
    lines = [HEADER_INITIALLY]
    lines.extend(render_fact(fact) for fact in problem.init_facts())
    lines.append(HEADER_GOAL)
    lines.extend(render_fact(atom) for atom in problem.goal.atoms)
    return "\n".join(lines)


def parse_problem_nl(
    text: str,
    problem_id: str = "parsed",
    vocabulary: Vocabulary | None = None,
) -> Problem:
    """Invert `render_problem`.

    Objects are every name mentioned in the initial block, in order of first
    mention; names on the vocabulary's ood list are flagged as such.

    Raises:
        UnparseableSentenceError: for a missing header, an empty block or a
            sentence outside the templates.
        InconsistentStateError: if the initial facts are not a valid state
            or the goal mentions an object the initial block does not.
    """
    vocabulary = vocabulary or Vocabulary.default()
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != HEADER_INITIALLY:
        raise UnparseableSentenceError(lines[0] if lines else "", f"expected {HEADER_INITIALLY!r}")
    if HEADER_GOAL not in lines:
        raise UnparseableSentenceError(lines[-1], f"missing {HEADER_GOAL!r}")
    goal_index = lines.index(HEADER_GOAL)
    init_lines = lines[1:goal_index]
    goal_lines = lines[goal_index + 1 :]
    if not init_lines:
        raise UnparseableSentenceError(HEADER_INITIALLY, "empty initial state")
    if not goal_lines:
        raise UnparseableSentenceError(HEADER_GOAL, "empty goal")

    init_facts = [parse_fact(line) for line in init_lines]
    atoms = tuple(parse_fact(line) for line in goal_lines)
    names = list(dict.fromkeys(name for fact in init_facts for name in fact.objects))
    state = canonicalize(init_facts, names)
    goal = Goal(atoms)
    unknown = [name for name in goal.objects if name not in state.objects]
    if unknown:
        raise InconsistentStateError(f"goal mentions unknown object(s) {unknown}")
    objects = tuple(ObjectId(name, vocabulary.is_ood(name)) for name in names)
    return Problem(problem_id, objects, state, goal)


def render_action(action: GroundAction) -> str:
    """Render a ground action as a move sentence."""
    match action:
        case Unstack(obj=obj):
            return MOVE_TO_TABLE_TEMPLATE.format(x=obj)
        case StackFromTable(obj=obj, dest=dest) | Stack(obj=obj, dest=dest):
            return MOVE_TEMPLATE.format(x=obj, y=dest)


def render_plan(plan: Plan) -> str:
    """Render a plan, one move sentence per line."""
    return "\n".join(render_action(action) for action in plan)


def split_sentences(text: str) -> list[str]:
    """Split text into sentences on line breaks and sentence-final periods."""
    return [
        sentence
        for line in text.splitlines()
        for sentence in _SENTENCE_SPLIT_RE.split(line.strip())
        if sentence
    ]


def parse_plan_nl(text: str, init: WorldState) -> Plan:
    """Resolve move sentences into ground actions against a running state.

    The schema for each move depends on where the object currently is, so
    resolution replays the plan as it goes. A resolved action whose
    preconditions fail is kept (the simulator rejects the plan later) and
    later sentences resolve against the last valid state.

    Raises:
        UnparseablePlanError: if a sentence is not a move, or names a move
            that cannot be grounded (unknown object, object onto itself,
            table move of an object already on the table).
    """
    state = init
    actions: list[GroundAction] = []
    for sentence in split_sentences(text):
        action = _resolve_move(sentence, state)
        actions.append(action)
        try:
            state = apply(state, action)
        except PreconditionViolationError as err:
            _LOGGER.debug("Move %r does not apply: %s", sentence, err)
    return Plan(tuple(actions))


def _resolve_move(sentence: str, state: WorldState) -> GroundAction:
    match = _MOVE_RE.fullmatch(sentence)
    if match is None:
        raise UnparseablePlanError(sentence)
    obj = match["x"]
    if obj not in state.objects:
        raise UnparseablePlanError(sentence, f"unknown object {obj!r}")
    below = state.support_of(obj)
    if match["table"]:
        if below is None:
            raise UnparseablePlanError(sentence, f"{obj!r} is already on the table")
        return Unstack(obj, below)
    dest = match["y"]
    if dest not in state.objects:
        raise UnparseablePlanError(sentence, f"unknown object {dest!r}")
    if dest == obj:
        raise UnparseablePlanError(sentence, f"{obj!r} cannot move onto itself")
    if below is None or below == dest:
        # A move onto the current support grounds to a table move that fails OnTable(obj).
        return StackFromTable(obj, dest)
    return Stack(obj, below, dest)
