"""PDDL problem and plan documents for the stacking domain."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum

from ..const import (
    ACTION_STACK,
    ACTION_STACK_FROM_TABLE,
    ACTION_UNSTACK,
    DOMAIN_NAME,
    PARSER_STOP,
    PRED_CLEAR,
    PRED_ON,
    PRED_ON_TABLE,
)
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
    canonicalize,
)
from ..exceptions import (
    InconsistentStateError,
    InvalidActionError,
    InvalidFactError,
    PddlSyntaxError,
    UnknownActionError,
    UnknownObjectError,
)
from ..grammar import Vocabulary
from .domain import STACKING_DOMAIN, format_domain
from .sexpr import SExpr, format_sexpr, group, parse_sexpr, parse_sexprs, symbol

_LOGGER = logging.getLogger(__name__)

_ARITY = {PRED_ON: 2, PRED_ON_TABLE: 1, PRED_CLEAR: 1}
_ACTION_ARITY = {ACTION_UNSTACK: 2, ACTION_STACK_FROM_TABLE: 2, ACTION_STACK: 3}


class DocumentKind(StrEnum):
    DOMAIN = "domain"
    PROBLEM = "problem"
    PLAN = "plan"


@dataclass(frozen=True, slots=True)
class PddlDocument:
    """Emitted PDDL text tagged with what it describes."""

    kind: DocumentKind
    text: str


def hyphenate(name: str) -> str:
    """Object name to PDDL identifier ("writing pad" -> "writing-pad")."""
    return name.replace(" ", "-")


def dehyphenate(token: str) -> str:
    """PDDL identifier to object name."""
    return token.replace("-", " ")


def _object_name(expr: SExpr) -> str:
    """Read an object token as an object name.

    Raises:
        PddlSyntaxError: for a token starting or ending with a hyphen.
    """
    name = dehyphenate(symbol(expr, "object"))
    if not name or name != name.strip():
        raise PddlSyntaxError(f"Invalid object name {format_sexpr(expr)!r}")
    return name


def fact_to_sexpr(fact: Fact) -> list[SExpr]:
    match fact:
        case On(above=above, below=below):
            return [PRED_ON, hyphenate(above), hyphenate(below)]
        case OnTable(obj=obj):
            return [PRED_ON_TABLE, hyphenate(obj)]
        case Clear(obj=obj):
            return [PRED_CLEAR, hyphenate(obj)]


def action_to_sexpr(action: GroundAction) -> list[SExpr]:
    match action:
        case Unstack(obj=obj, source=source):
            return [ACTION_UNSTACK, hyphenate(obj), hyphenate(source)]
        case StackFromTable(obj=obj, dest=dest):
            return [ACTION_STACK_FROM_TABLE, hyphenate(obj), hyphenate(dest)]
        case Stack(obj=obj, source=source, dest=dest):
            return [ACTION_STACK, hyphenate(obj), hyphenate(source), hyphenate(dest)]


def sexpr_to_fact(expr: SExpr) -> Fact:
    """Read one ground atom.

    Raises:
        PddlSyntaxError: for an unknown predicate or a wrong arity.
        InconsistentStateError: for an object on itself.
    """
    items = group(expr, "atom")
    if not items:
        raise PddlSyntaxError("Empty atom")
    predicate = symbol(items[0], "predicate")
    args = [_object_name(arg) for arg in items[1:]]
    if predicate not in _ARITY:
        raise PddlSyntaxError(f"Unknown predicate {predicate!r}")
    if len(args) != _ARITY[predicate]:
        raise PddlSyntaxError(f"{predicate} takes {_ARITY[predicate]} argument(s), got {len(args)}")
    if predicate == PRED_ON:
        try:
            return On(args[0], args[1])
        except InvalidFactError as err:
            raise InconsistentStateError(str(err)) from err
    if predicate == PRED_ON_TABLE:
        return OnTable(args[0])
    return Clear(args[0])


def _goal_atoms(expr: SExpr) -> list[Fact]:
    items = group(expr, "goal")
    if items and items[0] == "and":
        atoms = [sexpr_to_fact(item) for item in items[1:]]
    else:
        atoms = [sexpr_to_fact(expr)]
    if not atoms:
        raise PddlSyntaxError("Empty goal")
    return atoms


def _declared_objects(items: list[SExpr]) -> list[str]:
    """Object names from `:objects`, skipping `- type` annotations."""
    names: list[str] = []
    skip = False
    for item in items:
        if skip:
            skip = False
        elif symbol(item, "object") == "-":
            skip = True
        else:
            names.append(_object_name(item))
    return names


def format_problem(problem: Problem) -> str:
    """Write a problem file with facts in canonical render order."""
    init = [f"    {format_sexpr(fact_to_sexpr(fact))}" for fact in problem.init_facts()]
    init[-1] += ")"
    goal = " ".join(format_sexpr(fact_to_sexpr(atom)) for atom in problem.goal.atoms)
    lines = [
        f"(define (problem {problem.id})",
        f"  (:domain {DOMAIN_NAME})",
        f"  (:objects {' '.join(hyphenate(name) for name in problem.names)})",
        "  (:init",
        *init,
        f"  (:goal (and {goal})))",
    ]
    return "\n".join(lines) + "\n"


def parse_pddl_problem(text: str, vocabulary: Vocabulary | None = None) -> Problem:
    """Parse a problem document.

    Object order follows `:objects` (or first mention in `:init` when that
    section is absent). Missing clear facts are recomputed. A goal may be a
    single atom instead of an `(and ...)` conjunction.

    Raises:
        PddlSyntaxError: for malformed structure.
        InconsistentStateError: if the initial facts are not a valid state
            or the goal mentions an undeclared object.
    """
    vocabulary = vocabulary or Vocabulary.default()
    document = parse_sexpr(text)
    if len(document) < 2 or document[0] != "define":
        raise PddlSyntaxError("Problem must start with (define (problem ...))")
    header = group(document[1], "problem header")
    if len(header) != 2 or header[0] != "problem":
        raise PddlSyntaxError("Problem must start with (define (problem ...))")
    problem_id = symbol(header[1], "problem name")

    sections: dict[str, list[SExpr]] = {}
    for section in document[2:]:
        items = group(section, "problem section")
        if not items:
            raise PddlSyntaxError("Empty problem section")
        sections[symbol(items[0], "section keyword")] = items[1:]
    for required in (":init", ":goal"):
        if required not in sections:
            raise PddlSyntaxError(f"Problem {problem_id!r} lacks {required}")
    if ":domain" in sections and sections[":domain"] != [DOMAIN_NAME]:
        _LOGGER.warning("Problem %s names domain %s", problem_id, sections[":domain"])
    if len(sections[":goal"]) != 1:
        raise PddlSyntaxError(":goal takes exactly one formula")

    init_facts = [sexpr_to_fact(item) for item in sections[":init"]]
    atoms = _goal_atoms(sections[":goal"][0])
    if ":objects" in sections:
        names = _declared_objects(sections[":objects"])
    else:
        names = list(dict.fromkeys(name for fact in init_facts for name in fact.objects))
    if len(set(names)) != len(names):
        raise InconsistentStateError("an object is declared twice")

    state = canonicalize(init_facts, names)
    goal = Goal(tuple(atoms))
    unknown = [name for name in goal.objects if name not in names]
    if unknown:
        raise InconsistentStateError(f"goal mentions undeclared object(s) {unknown}")
    objects = tuple(ObjectId(name, vocabulary.is_ood(name)) for name in names)
    try:
        return Problem(problem_id, objects, state, goal)
    except ValueError as err:
        raise InconsistentStateError(str(err)) from err


def strip_fragment(text: str) -> str:
    """Drop everything from the first stop string onward."""
    return text.split(PARSER_STOP, 1)[0]


def parse_pddl_goal(text: str, objects: Iterable[str]) -> Goal:
    """Parse a goal fragment as produced in the parser role.

    Accepts `(and ...)` or a single atom, optionally followed by `;`.

    Raises:
        PddlSyntaxError: for malformed text.
        InconsistentStateError: for an object on itself.
        UnknownObjectError: for an object outside `objects`.
    """
    known = set(objects)
    atoms = _goal_atoms(parse_sexpr(strip_fragment(text)))
    for atom in atoms:
        for name in atom.objects:
            if name not in known:
                raise UnknownObjectError(name)
    return Goal(tuple(atoms))


def format_plan(plan: Plan) -> str:
    """One action s-expression per line."""
    return "".join(format_sexpr(action_to_sexpr(action)) + "\n" for action in plan)


def _parse_action(expr: SExpr, problem: Problem) -> GroundAction:
    if not isinstance(expr, list) or not expr:
        raise PddlSyntaxError(f"Expected an action, found {format_sexpr(expr)}")
    name = symbol(expr[0], "action name")
    if name not in _ACTION_ARITY:
        raise UnknownActionError(name)
    args = [_object_name(arg) for arg in expr[1:]]
    if len(args) != _ACTION_ARITY[name]:
        raise UnknownActionError(name, f"expects {_ACTION_ARITY[name]} arguments, got {len(args)}")
    for arg in args:
        if not problem.has_object(arg):
            raise UnknownObjectError(arg)
    try:
        if name == ACTION_UNSTACK:
            return Unstack(args[0], args[1])
        if name == ACTION_STACK_FROM_TABLE:
            return StackFromTable(args[0], args[1])
        return Stack(args[0], args[1], args[2])
    except InvalidActionError as err:
        raise UnknownActionError(name, str(err)) from err


def parse_pddl_plan(text: str, problem: Problem) -> Plan:
    """Parse a sequence of ground action s-expressions.

    Raises:
        PddlSyntaxError: for malformed text.
        UnknownActionError: for an unknown action name or arity.
        UnknownObjectError: for an object the problem does not declare.
    """
    return Plan(tuple(_parse_action(expr, problem) for expr in parse_sexprs(text)))


def emit_domain() -> PddlDocument:
    return PddlDocument(DocumentKind.DOMAIN, format_domain(STACKING_DOMAIN))


def emit_problem(problem: Problem) -> PddlDocument:
    return PddlDocument(DocumentKind.PROBLEM, format_problem(problem))


def emit_plan(plan: Plan) -> PddlDocument:
    return PddlDocument(DocumentKind.PLAN, format_plan(plan))
