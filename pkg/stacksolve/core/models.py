"""Value types for the object-stacking domain."""

from __future__ import annotations

import functools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from ..exceptions import InvalidActionError, InvalidFactError


@dataclass(frozen=True, slots=True)
class ObjectId:
    """A labeled object, flagged when drawn from the out-of-distribution list."""

    name: str
    ood: bool = False

    def __post_init__(self) -> None:
        if not self.name or self.name != self.name.strip():
            raise ValueError(f"Invalid object name {self.name!r}")


@dataclass(frozen=True, slots=True)
class On:
    """`above` sits directly on `below`."""

    above: str
    below: str

    def __post_init__(self) -> None:
        if self.above == self.below:
            raise InvalidFactError(f"{self.above!r} cannot be on itself")

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.above, self.below)

    def __str__(self) -> str:
        return f"(on {self.above} {self.below})"


@dataclass(frozen=True, slots=True)
class OnTable:
    """`obj` rests directly on the table."""

    obj: str

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.obj,)

    def __str__(self) -> str:
        return f"(on-table {self.obj})"


@dataclass(frozen=True, slots=True)
class Clear:
    """Nothing is on `obj`."""

    obj: str

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.obj,)

    def __str__(self) -> str:
        return f"(clear {self.obj})"


type Fact = On | OnTable | Clear


def _require_distinct(action: object, *names: str) -> None:
    if len(set(names)) != len(names):
        raise InvalidActionError(f"{action} references the same object twice")


@dataclass(frozen=True, slots=True)
class Unstack:
    """Move `obj` from `source` down to the table."""

    obj: str
    source: str

    def __post_init__(self) -> None:
        _require_distinct(self, self.obj, self.source)

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.obj, self.source)

    @property
    def preconditions(self) -> tuple[Fact, ...]:
        return (On(self.obj, self.source), Clear(self.obj))

    @property
    def add_effects(self) -> frozenset[Fact]:
        return frozenset({OnTable(self.obj), Clear(self.source)})

    @property
    def delete_effects(self) -> frozenset[Fact]:
        return frozenset({On(self.obj, self.source)})

    def __str__(self) -> str:
        return f"(unstack {self.obj} {self.source})"


@dataclass(frozen=True, slots=True)
class StackFromTable:
    """Move `obj` from the table onto `dest`."""

    obj: str
    dest: str

    def __post_init__(self) -> None:
        _require_distinct(self, self.obj, self.dest)

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.obj, self.dest)

    @property
    def preconditions(self) -> tuple[Fact, ...]:
        return (OnTable(self.obj), Clear(self.obj), Clear(self.dest))

    @property
    def add_effects(self) -> frozenset[Fact]:
        return frozenset({On(self.obj, self.dest)})

    @property
    def delete_effects(self) -> frozenset[Fact]:
        return frozenset({OnTable(self.obj), Clear(self.dest)})

    def __str__(self) -> str:
        return f"(stackfromtable {self.obj} {self.dest})"


@dataclass(frozen=True, slots=True)
class Stack:
    """Move `obj` from `source` directly onto `dest`."""

    obj: str
    source: str
    dest: str

    def __post_init__(self) -> None:
        _require_distinct(self, self.obj, self.source, self.dest)

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.obj, self.source, self.dest)

    @property
    def preconditions(self) -> tuple[Fact, ...]:
        return (On(self.obj, self.source), Clear(self.obj), Clear(self.dest))

    @property
    def add_effects(self) -> frozenset[Fact]:
        return frozenset({On(self.obj, self.dest), Clear(self.source)})

    @property
    def delete_effects(self) -> frozenset[Fact]:
        return frozenset({On(self.obj, self.source), Clear(self.dest)})

    def __str__(self) -> str:
        return f"(stack {self.obj} {self.source} {self.dest})"


type GroundAction = Unstack | StackFromTable | Stack


@dataclass(frozen=True)
class WorldState:
    """A canonical set of facts over labeled objects.

    Build instances through `canonicalize` (or `state_from_stacks`); the
    constructor itself trusts its input.
    """

    facts: frozenset[Fact]

    @functools.cached_property
    def _supports(self) -> dict[str, str | None]:
        supports: dict[str, str | None] = {}
        for fact in self.facts:
            if isinstance(fact, On):
                supports[fact.above] = fact.below
            elif isinstance(fact, OnTable):
                supports[fact.obj] = None
        return supports

    @functools.cached_property
    def _occupants(self) -> dict[str, str]:
        return {below: above for above, below in self._supports.items() if below is not None}

    @property
    def objects(self) -> frozenset[str]:
        return frozenset(self._supports)

    def support_of(self, name: str) -> str | None:
        """Return the object under `name`, or None when it rests on the table."""
        return self._supports[name]

    def occupant_of(self, name: str) -> str | None:
        """Return the object directly on `name`, if any."""
        return self._occupants.get(name)

    def is_clear(self, name: str) -> bool:
        return name in self._supports and name not in self._occupants

    def stacks(self, order: Sequence[str] | None = None) -> list[list[str]]:
        """Return every stack bottom to top.

        Stacks are ordered by the position of their bottom object in `order`;
        without an order, bottoms are sorted by name.
        """
        bottoms = [name for name, below in self._supports.items() if below is None]
        if order is None:
            bottoms.sort()
        else:
            rank = {name: index for index, name in enumerate(order)}
            bottoms.sort(key=lambda name: (rank.get(name, len(rank)), name))
        result = []
        for bottom in bottoms:
            stack = [bottom]
            while (above := self._occupants.get(stack[-1])) is not None:
                stack.append(above)
            result.append(stack)
        return result

    def canonical_facts(self, order: Sequence[str] | None = None) -> list[Fact]:
        """List facts stack by stack, bottom to top, clear fact last."""
        facts: list[Fact] = []
        for stack in self.stacks(order):
            facts.append(OnTable(stack[0]))
            facts.extend(On(above, below) for below, above in zip(stack, stack[1:], strict=False))
            facts.append(Clear(stack[-1]))
        return facts


@dataclass(frozen=True)
class Goal:
    """A non-empty ordered conjunction of facts."""

    atoms: tuple[Fact, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("A goal needs at least one atom")
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def objects(self) -> list[str]:
        """Objects in order of first mention."""
        return list(dict.fromkeys(name for atom in self.atoms for name in atom.objects))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.atoms)


@dataclass(frozen=True)
class Plan:
    """An ordered, possibly empty, sequence of ground actions."""

    actions: tuple[GroundAction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "actions", tuple(self.actions))

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self) -> Iterator[GroundAction]:
        return iter(self.actions)


@dataclass(frozen=True)
class Problem:
    """Objects, a complete initial state and a conjunctive goal.

    `objects` is normalized into canonical stack order on construction, so
    two problems describing the same world compare equal however their
    objects were listed.
    """

    id: str
    objects: tuple[ObjectId, ...]
    init: WorldState
    goal: Goal
    _by_name: dict[str, ObjectId] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_name = {obj.name: obj for obj in self.objects}
        if len(by_name) != len(self.objects):
            raise ValueError(f"Problem {self.id!r} lists an object twice")
        if set(by_name) != self.init.objects:
            raise ValueError(f"Problem {self.id!r}: initial state does not cover exactly its objects")
        unknown = [name for name in self.goal.objects if name not in by_name]
        if unknown:
            raise ValueError(f"Problem {self.id!r}: goal mentions unknown objects {unknown}")
        ordered = [
            by_name[name]
            for stack in self.init.stacks([obj.name for obj in self.objects])
            for name in stack
        ]
        object.__setattr__(self, "objects", tuple(ordered))
        object.__setattr__(self, "_by_name", by_name)

    @property
    def names(self) -> list[str]:
        return [obj.name for obj in self.objects]

    def object(self, name: str) -> ObjectId:
        return self._by_name[name]

    def has_object(self, name: str) -> bool:
        return name in self._by_name

    @property
    def ood_objects(self) -> list[ObjectId]:
        return [obj for obj in self.objects if obj.ood]

    def init_facts(self) -> list[Fact]:
        """Initial facts in canonical render order."""
        return self.init.canonical_facts(self.names)
