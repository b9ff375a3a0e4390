"""The fixed stacking domain, its reader/writer and a generic STRIPS interpreter."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from ..const import (
    ACTION_STACK,
    ACTION_STACK_FROM_TABLE,
    ACTION_UNSTACK,
    DOMAIN_NAME,
    PRED_CLEAR,
    PRED_ON,
    PRED_ON_TABLE,
)
from ..exceptions import PddlSyntaxError, UnknownActionError
from .sexpr import SExpr, format_sexpr, group, parse_sexpr, symbol

_LOGGER = logging.getLogger(__name__)

type GroundAtom = tuple[str, ...]

REQUIREMENTS = (":strips", ":typing")
OBJECT_TYPE = "object"


@dataclass(frozen=True, slots=True)
class Atom:
    """A predicate applied to variables or constants."""

    predicate: str
    args: tuple[str, ...]

    def ground(self, binding: Mapping[str, str]) -> GroundAtom:
        return (self.predicate, *(binding.get(arg, arg) for arg in self.args))

    def __str__(self) -> str:
        return format_sexpr([self.predicate, *self.args])


@dataclass(frozen=True, slots=True)
class ActionSchema:
    """A STRIPS action schema with positive preconditions."""

    name: str
    parameters: tuple[str, ...]
    precondition: tuple[Atom, ...]
    add: tuple[Atom, ...]
    delete: tuple[Atom, ...]


@dataclass(frozen=True, slots=True)
class DomainSchema:
    name: str
    requirements: tuple[str, ...]
    predicates: tuple[Atom, ...]
    actions: tuple[ActionSchema, ...]

    def action(self, name: str) -> ActionSchema:
        for schema in self.actions:
            if schema.name == name:
                return schema
        raise UnknownActionError(name)


def _atom(predicate: str, *args: str) -> Atom:
    return Atom(predicate, args)


STACKING_DOMAIN = DomainSchema(
    name=DOMAIN_NAME,
    requirements=REQUIREMENTS,
    predicates=(
        _atom(PRED_ON, "?x", "?y"),
        _atom(PRED_ON_TABLE, "?x"),
        _atom(PRED_CLEAR, "?x"),
    ),
    actions=(
        ActionSchema(
            name=ACTION_UNSTACK,
            parameters=("?x", "?y"),
            precondition=(_atom(PRED_ON, "?x", "?y"), _atom(PRED_CLEAR, "?x")),
            add=(_atom(PRED_ON_TABLE, "?x"), _atom(PRED_CLEAR, "?y")),
            delete=(_atom(PRED_ON, "?x", "?y"),),
        ),
        ActionSchema(
            name=ACTION_STACK_FROM_TABLE,
            parameters=("?x", "?y"),
            precondition=(
                _atom(PRED_ON_TABLE, "?x"),
                _atom(PRED_CLEAR, "?x"),
                _atom(PRED_CLEAR, "?y"),
            ),
            add=(_atom(PRED_ON, "?x", "?y"),),
            delete=(_atom(PRED_ON_TABLE, "?x"), _atom(PRED_CLEAR, "?y")),
        ),
        ActionSchema(
            name=ACTION_STACK,
            parameters=("?x", "?y", "?z"),
            precondition=(
                _atom(PRED_ON, "?x", "?y"),
                _atom(PRED_CLEAR, "?x"),
                _atom(PRED_CLEAR, "?z"),
            ),
            add=(_atom(PRED_ON, "?x", "?z"), _atom(PRED_CLEAR, "?y")),
            delete=(_atom(PRED_ON, "?x", "?y"), _atom(PRED_CLEAR, "?z")),
        ),
    ),
)


def _typed(variables: Iterable[str]) -> str:
    return " ".join(f"{var} - {OBJECT_TYPE}" for var in variables)


def _conjunction(atoms: Iterable[str]) -> str:
    return "(and " + " ".join(atoms) + ")"


def format_domain(domain: DomainSchema) -> str:
    """Write a domain schema in the layout `parse_pddl_domain` reads back."""
    lines = [
        f"(define (domain {domain.name})",
        f"  (:requirements {' '.join(domain.requirements)})",
        "  (:predicates",
    ]
    predicates = [f"    ({atom.predicate} {_typed(atom.args)})" for atom in domain.predicates]
    predicates[-1] += ")"
    lines.extend(predicates)
    for schema in domain.actions:
        effects = [str(atom) for atom in schema.add] + [f"(not {atom})" for atom in schema.delete]
        lines.extend(
            [
                f"  (:action {schema.name}",
                f"    :parameters ({_typed(schema.parameters)})",
                f"    :precondition {_conjunction(str(atom) for atom in schema.precondition)}",
                f"    :effect {_conjunction(effects)})",
            ]
        )
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _variables(expr: SExpr) -> tuple[str, ...]:
    """Read a typed variable list such as `(?x - object ?y - object)`."""
    items = [symbol(item, "parameter") for item in group(expr, "parameter list")]
    variables: list[str] = []
    index = 0
    while index < len(items):
        name = items[index]
        if not name.startswith("?"):
            raise PddlSyntaxError(f"Expected a variable, found {name!r}")
        variables.append(name)
        index += 1
        if index < len(items) and items[index] == "-":
            index += 2
    return tuple(variables)


def _parse_atom(expr: SExpr) -> Atom:
    items = group(expr, "atom")
    if not items:
        raise PddlSyntaxError("Empty atom")
    return Atom(symbol(items[0], "predicate"), tuple(symbol(arg, "argument") for arg in items[1:]))


def _literals(expr: SExpr) -> list[SExpr]:
    items = group(expr, "formula")
    if items and items[0] == "and":
        return items[1:]
    return [expr]


def _parse_action(items: list[SExpr]) -> ActionSchema:
    if len(items) < 2 or len(items) % 2:
        raise PddlSyntaxError(f"Malformed action {format_sexpr(items)}")
    name = symbol(items[1], "action name")
    fields: dict[str, SExpr] = {}
    for key, value in itertools.batched(items[2:], 2):
        fields[symbol(key, "action field")] = value
    missing = [key for key in (":parameters", ":precondition", ":effect") if key not in fields]
    if missing:
        raise PddlSyntaxError(f"Action {name!r} lacks {', '.join(missing)}")
    add: list[Atom] = []
    delete: list[Atom] = []
    for literal in _literals(fields[":effect"]):
        parts = group(literal, "effect")
        if parts and parts[0] == "not":
            if len(parts) != 2:
                raise PddlSyntaxError(f"Malformed negation {format_sexpr(literal)}")
            delete.append(_parse_atom(parts[1]))
        else:
            add.append(_parse_atom(literal))
    return ActionSchema(
        name=name,
        parameters=_variables(fields[":parameters"]),
        precondition=tuple(_parse_atom(item) for item in _literals(fields[":precondition"])),
        add=tuple(add),
        delete=tuple(delete),
    )


def parse_pddl_domain(text: str) -> DomainSchema:
    """Parse a STRIPS domain document.

    Raises:
        PddlSyntaxError: if the text is not a `(define (domain ...) ...)` form.
    """
    document = parse_sexpr(text)
    if len(document) < 2 or document[0] != "define":
        raise PddlSyntaxError("Domain must start with (define (domain ...))")
    header = group(document[1], "domain header")
    if len(header) != 2 or header[0] != "domain":
        raise PddlSyntaxError("Domain must start with (define (domain ...))")

    requirements: tuple[str, ...] = ()
    predicates: list[Atom] = []
    actions: list[ActionSchema] = []
    for section in document[2:]:
        items = group(section, "domain section")
        if not items:
            raise PddlSyntaxError("Empty domain section")
        match items[0]:
            case ":requirements":
                requirements = tuple(symbol(item, "requirement") for item in items[1:])
            case ":predicates":
                for item in items[1:]:
                    parts = group(item, "predicate")
                    predicates.append(
                        Atom(symbol(parts[0], "predicate"), _variables(parts[1:]))
                    )
            case ":action":
                actions.append(_parse_action(items))
            case ":types":
                continue
            case other:
                raise PddlSyntaxError(f"Unsupported domain section {format_sexpr(other)}")
    return DomainSchema(
        name=symbol(header[1], "domain name"),
        requirements=requirements,
        predicates=tuple(predicates),
        actions=tuple(actions),
    )


@dataclass(frozen=True, slots=True)
class GroundOperator:
    """An action schema bound to objects."""

    name: str
    args: tuple[str, ...]
    precondition: frozenset[GroundAtom]
    add: frozenset[GroundAtom]
    delete: frozenset[GroundAtom]

    def applicable(self, atoms: frozenset[GroundAtom]) -> bool:
        return self.precondition <= atoms

    def apply(self, atoms: frozenset[GroundAtom]) -> frozenset[GroundAtom]:
        return (atoms - self.delete) | self.add


class StripsInterpreter:
    """Executes any parsed STRIPS domain over ground atom sets.

    Parameters bind to pairwise distinct objects.
    """

    def __init__(self, domain: DomainSchema) -> None:
        self._domain = domain

    def ground(self, name: str, args: Iterable[str]) -> GroundOperator:
        schema = self._domain.action(name)
        values = tuple(args)
        if len(values) != len(schema.parameters):
            raise UnknownActionError(
                name, f"expects {len(schema.parameters)} arguments, got {len(values)}"
            )
        binding = dict(zip(schema.parameters, values, strict=True))
        return GroundOperator(
            name=name,
            args=values,
            precondition=frozenset(atom.ground(binding) for atom in schema.precondition),
            add=frozenset(atom.ground(binding) for atom in schema.add),
            delete=frozenset(atom.ground(binding) for atom in schema.delete),
        )

    def operators(self, objects: Iterable[str]) -> Iterator[GroundOperator]:
        """Yield every grounding over distinct objects."""
        names = sorted(objects)
        for schema in self._domain.actions:
            for args in itertools.permutations(names, len(schema.parameters)):
                yield self.ground(schema.name, args)

    def successors(
        self, atoms: frozenset[GroundAtom], objects: Iterable[str]
    ) -> Iterator[tuple[GroundOperator, frozenset[GroundAtom]]]:
        for operator in self.operators(objects):
            if operator.applicable(atoms):
                yield operator, operator.apply(atoms)
