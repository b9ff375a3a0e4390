"""Object vocabularies for the synthetic stacking grammar."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..exceptions import VocabularyError

_LOGGER = logging.getLogger(__name__)

SECTION_HOUSEHOLD = "household"
SECTION_OOD = "ood"

# Words the sentence templates use as delimiters; an object name containing
# one would make a sentence match a template in more than one way.
RESERVED_WORDS = frozenset(
    {"the", "is", "on", "onto", "rests", "nothing", "table", "there", "move"}
)

_NAME_RE = re.compile(r"[a-z0-9]+(?: [a-z0-9]+)*")
_SECTION_RE = re.compile(r"\[(?P<section>[a-z]+)\]")

# Attested in the stimuli and required in every vocabulary.
REQUIRED_HOUSEHOLD = ("plate", "keyboard", "writing pad", "notebook", "tissue box", "tablet")
REQUIRED_OOD = ("meteorite", "corduroy pants")


def validate_name(name: str) -> None:
    """Check one object name against the grammar's naming rules.

    Raises:
        VocabularyError: if the name is not lower-case words or uses a
            reserved template word.
    """
    if not _NAME_RE.fullmatch(name):
        raise VocabularyError(f"Object name {name!r} must be lower-case words without hyphens")
    reserved = RESERVED_WORDS.intersection(name.split(" "))
    if reserved:
        raise VocabularyError(f"Object name {name!r} uses reserved word(s) {sorted(reserved)}")


@dataclass(frozen=True)
class Vocabulary:
    """Household and out-of-distribution object names."""

    household: tuple[str, ...]
    ood: tuple[str, ...]

    def __post_init__(self) -> None:
        names = [*self.household, *self.ood]
        for name in names:
            validate_name(name)
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise VocabularyError(f"Names listed more than once: {duplicates}")
        words = {name: name.split(" ") for name in names}
        for name, parts in words.items():
            for other, other_parts in words.items():
                if name != other and other_parts[: len(parts)] == parts:
                    raise VocabularyError(f"{name!r} is a word-prefix of {other!r}")

    @classmethod
    def parse(cls, text: str) -> Vocabulary:
        """Parse the `[household]` / `[ood]` plain-text format."""
        sections: dict[str, list[str]] = {SECTION_HOUSEHOLD: [], SECTION_OOD: []}
        current: list[str] | None = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if match := _SECTION_RE.fullmatch(line):
                section = match.group("section")
                if section not in sections:
                    raise VocabularyError(f"line {number}: unknown section [{section}]")
                current = sections[section]
                continue
            if current is None:
                raise VocabularyError(f"line {number}: name {line!r} outside any section")
            current.append(line)
        return cls(tuple(sections[SECTION_HOUSEHOLD]), tuple(sections[SECTION_OOD]))

    @classmethod
    def load(cls, path: Path) -> Vocabulary:
        """Load a vocabulary file."""
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as err:
            raise VocabularyError(f"Cannot read vocabulary {path}: {err}") from err
        vocabulary = cls.parse(text)
        _LOGGER.debug(
            "Loaded vocabulary %s: %d household, %d ood",
            path,
            len(vocabulary.household),
            len(vocabulary.ood),
        )
        return vocabulary

    @classmethod
    def default(cls) -> Vocabulary:
        """Return the vocabulary shipped with the package."""
        return _default_vocabulary()

    def is_ood(self, name: str) -> bool:
        return name in self.ood

    def missing_attested(self) -> list[str]:
        """Attested stimulus names this vocabulary lacks."""
        return [
            name
            for name in (*REQUIRED_HOUSEHOLD, *REQUIRED_OOD)
            if name not in self.household and name not in self.ood
        ]


_DEFAULT: Vocabulary | None = None


def _default_vocabulary() -> Vocabulary:
    global _DEFAULT  # noqa: PLW0603
    if _DEFAULT is None:
        text = resources.files("stacksolve.data").joinpath("vocabulary.txt").read_text("utf-8")
        _DEFAULT = Vocabulary.parse(text)
    return _DEFAULT
