"""Completion parameters and recorded prompt/completion transcripts."""

from __future__ import annotations

import hashlib
import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import voluptuous as vol

from ..const import (
    FULL_PROBLEM_MAX_TOKENS,
    HEADER_INITIALLY,
    PARSER_MAX_TOKENS,
    PARSER_STOP,
    PARSER_TEMPERATURE,
    PLANNER_MAX_TOKENS,
    PLANNER_TEMPERATURE,
)
from ..exceptions import SchemaError

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CompletionParams:
    temperature: float
    max_tokens: int
    stop: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be positive")
        if not self.stop or not all(self.stop):
            raise ValueError("at least one non-empty stop string is required")

    def as_dict(self) -> dict[str, Any]:
        return {
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
            "stop": list(self.stop),
        }


PLANNER_PARAMS = CompletionParams(PLANNER_TEMPERATURE, PLANNER_MAX_TOKENS, (HEADER_INITIALLY,))
PARSER_PARAMS = CompletionParams(PARSER_TEMPERATURE, PARSER_MAX_TOKENS, (PARSER_STOP,))
FULL_PROBLEM_PARAMS = CompletionParams(PARSER_TEMPERATURE, FULL_PROBLEM_MAX_TOKENS, (PARSER_STOP,))


def prompt_hash(prompt: str) -> str:
    """SHA-256 hex digest of the UTF-8 prompt."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


def truncate_at_stop(text: str, stop: Iterable[str]) -> str:
    """Cut `text` at the earliest occurrence of any stop string."""
    cut = len(text)
    for marker in stop:
        index = text.find(marker)
        if index != -1:
            cut = min(cut, index)
    return text[:cut]


PARAMS_SCHEMA = vol.Schema(
    {
        vol.Required("temperature"): vol.All(vol.Coerce(float), vol.Range(min=0)),
        vol.Required("max_tokens"): vol.All(int, vol.Range(min=1)),
        vol.Required("stop"): vol.All([str], vol.Length(min=1)),
    }
)

TRANSCRIPT_ENTRY_SCHEMA = vol.Schema(
    {
        vol.Required("prompt_hash"): vol.Match(r"^[0-9a-f]{64}$"),
        vol.Required("prompt"): str,
        vol.Required("params"): PARAMS_SCHEMA,
        vol.Required("completion"): str,
    }
)


@dataclass(frozen=True, slots=True)
class TranscriptEntry:
    prompt_hash: str
    prompt: str
    params: CompletionParams
    completion: str

    @classmethod
    def create(cls, prompt: str, params: CompletionParams, completion: str) -> TranscriptEntry:
        return cls(prompt_hash(prompt), prompt, params, completion)

    def to_record(self) -> dict[str, Any]:
        return {
            "prompt_hash": self.prompt_hash,
            "prompt": self.prompt,
            "params": self.params.as_dict(),
            "completion": self.completion,
        }

    @classmethod
    def from_record(cls, record: Any) -> TranscriptEntry:
        """Validate a decoded record.

        Raises:
            vol.Invalid: if the record is malformed or its hash is wrong.
        """
        data = TRANSCRIPT_ENTRY_SCHEMA(record)
        if prompt_hash(data["prompt"]) != data["prompt_hash"]:
            raise vol.Invalid("prompt_hash does not match prompt")
        params = data["params"]
        return cls(
            data["prompt_hash"],
            data["prompt"],
            CompletionParams(params["temperature"], params["max_tokens"], tuple(params["stop"])),
            data["completion"],
        )


@dataclass
class Transcript:
    """Prompt/completion pairs keyed by prompt hash, optionally backed by a file.

    A later entry for the same prompt replaces an earlier one on lookup.
    """

    entries: list[TranscriptEntry] = field(default_factory=list)
    path: Path | None = None
    _index: dict[str, TranscriptEntry] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        for entry in self.entries:
            self._index[entry.prompt_hash] = entry

    @classmethod
    def load(cls, path: Path) -> Transcript:
        """Read a transcript file; a missing file gives an empty transcript bound to it.

        Raises:
            SchemaError: naming the first malformed line.
        """
        entries: list[TranscriptEntry] = []
        if path.exists():
            with path.open(encoding="utf-8") as handle:
                for number, line in enumerate(handle, start=1):
                    if not line.strip():
                        continue
                    try:
                        entries.append(TranscriptEntry.from_record(json.loads(line)))
                    except json.JSONDecodeError as err:
                        raise SchemaError(number, f"invalid JSON: {err.msg}") from err
                    except (vol.Invalid, ValueError) as err:
                        raise SchemaError(number, str(err)) from err
        _LOGGER.debug("[Replay] loaded %d transcript entries from %s", len(entries), path)
        return cls(entries, path)

    def save(self, path: Path | None = None) -> None:
        target = path or self.path
        if target is None:
            raise ValueError("Transcript has no path")
        with target.open("w", encoding="utf-8") as handle:
            for entry in self.entries:
                handle.write(_dumps(entry))

    def append(self, entry: TranscriptEntry) -> None:
        """Add an entry, appending it to the backing file when there is one."""
        self.entries.append(entry)
        self._index[entry.prompt_hash] = entry
        if self.path is not None:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(_dumps(entry))

    def lookup(self, prompt: str) -> TranscriptEntry | None:
        return self._index.get(prompt_hash(prompt))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[TranscriptEntry]:
        return iter(self.entries)


def _dumps(entry: TranscriptEntry) -> str:
    return json.dumps(entry.to_record(), ensure_ascii=False) + "\n"
