"""Exceptions raised by the stacksolve toolkit."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .core.models import Fact, GroundAction


class StackSolveError(Exception):
    """Base class for every error raised by this package."""


class InvalidFactError(StackSolveError, ValueError):
    """A fact violates its own invariant (e.g. an object on itself)."""


class InvalidActionError(StackSolveError, ValueError):
    """A ground action references the same object twice."""


class InconsistentStateError(StackSolveError):
    """A fact set does not describe a valid world state."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class PreconditionViolationError(StackSolveError):
    """An action was applied in a state where a precondition is missing."""

    def __init__(self, action: GroundAction, missing_fact: Fact) -> None:
        super().__init__(f"{action} requires {missing_fact}")
        self.action = action
        self.missing_fact = missing_fact


class TooManyObjectsError(StackSolveError):
    """Exhaustive enumeration was requested for too many objects."""


class ParseError(StackSolveError):
    """Base class for every input that could not be turned into symbols."""


class UnparseableSentenceError(ParseError):
    """A line of a problem description matches no template."""

    def __init__(self, line: str, reason: str | None = None) -> None:
        super().__init__(f"Unparseable sentence {line!r}" + (f": {reason}" if reason else ""))
        self.line = line


class UnparseablePlanError(ParseError):
    """A plan sentence matches no move template or cannot be grounded."""

    def __init__(self, sentence: str, reason: str | None = None) -> None:
        super().__init__(f"Unparseable plan step {sentence!r}" + (f": {reason}" if reason else ""))
        self.sentence = sentence


class PddlSyntaxError(ParseError):
    """PDDL text is not a well-formed document."""

    def __init__(self, message: str, position: int | None = None) -> None:
        super().__init__(message if position is None else f"{message} (at offset {position})")
        self.position = position


class UnknownActionError(ParseError):
    """A plan step names an action the stacking domain does not define."""

    def __init__(self, name: str, reason: str | None = None) -> None:
        super().__init__(f"Unknown action {name!r}" + (f": {reason}" if reason else ""))
        self.name = name


class UnknownObjectError(ParseError):
    """A plan or goal names an object the problem does not declare."""

    def __init__(self, name: str) -> None:
        super().__init__(f"Unknown object {name!r}")
        self.name = name


class VocabularyError(StackSolveError):
    """A vocabulary file is malformed or violates the naming rules."""


class VocabularyExhaustedError(StackSolveError):
    """Not enough out-of-distribution names are left for a renaming."""


class GenerationError(StackSolveError):
    """Benchmark generation gave up after too many resampling attempts."""


class SchemaError(StackSolveError):
    """A line-delimited record does not match its schema."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class TransportError(StackSolveError):
    """The completion endpoint could not be reached or rejected the call."""


class ReplayMissError(StackSolveError):
    """No recorded completion exists for a prompt."""

    def __init__(self, prompt_hash: str) -> None:
        super().__init__(f"No transcript entry for prompt {prompt_hash}")
        self.prompt_hash = prompt_hash


class DegenerateMarginsError(StackSolveError, ValueError):
    """A contingency table has an empty row or column."""
