"""Fixtures for stacksolve tests."""

from pathlib import Path
from unittest.mock import AsyncMock, MagicMock

import pytest

from stacksolve.benchgen import BenchmarkItem, GenConfig, generate_dataset, read_dataset
from stacksolve.core import Clear, Goal, ObjectId, Problem, state_from_stacks
from stacksolve.grammar import Vocabulary
from stacksolve.llm import Transcript

from .fixtures.sample_problems import SUPPLEMENT_ID, SUPPLEMENT_STACKS

FIXTURES_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = FIXTURES_DIR / "golden"
PILOT_DIR = FIXTURES_DIR / "pilot"
SUPPLEMENT_DIR = FIXTURES_DIR / "supplement"


@pytest.fixture
def vocabulary() -> Vocabulary:
    """Return the packaged vocabulary."""
    return Vocabulary.default()


@pytest.fixture
def supplement_problem() -> Problem:
    """Return the worked example: clear the notebook under the tissue box."""
    objects = tuple(ObjectId(name) for stack in SUPPLEMENT_STACKS for name in stack)
    return Problem(
        SUPPLEMENT_ID,
        objects,
        state_from_stacks(SUPPLEMENT_STACKS),
        Goal((Clear("notebook"),)),
    )


@pytest.fixture
def supplement_item() -> BenchmarkItem:
    """Return the worked example as a dataset item."""
    return read_dataset(SUPPLEMENT_DIR / "dataset.jsonl")[0]


@pytest.fixture
def supplement_transcript() -> Transcript:
    """Return recorded completions for the worked example."""
    return Transcript.load(SUPPLEMENT_DIR / "transcript.jsonl")


@pytest.fixture
def pilot_items() -> list[BenchmarkItem]:
    """Return the ten-family pilot dataset."""
    return read_dataset(PILOT_DIR / "dataset.jsonl")


@pytest.fixture
def pilot_transcript() -> Transcript:
    """Return recorded completions for the pilot dataset."""
    return Transcript.load(PILOT_DIR / "transcript.jsonl")


@pytest.fixture
def small_config() -> GenConfig:
    """Return a small generation config."""
    return GenConfig(seed=7, count=6)


@pytest.fixture
def small_dataset(small_config: GenConfig) -> list[BenchmarkItem]:
    """Return a small generated dataset."""
    return generate_dataset(small_config)


@pytest.fixture
def mock_response() -> MagicMock:
    """Return a mock aiohttp response carrying a completion."""
    response = MagicMock()
    response.raise_for_status = MagicMock()
    response.json = AsyncMock(return_value={"choices": [{"text": "Move the plate onto the table."}]})
    return response


@pytest.fixture
def mock_session(mock_response: MagicMock) -> MagicMock:
    """Return a mock aiohttp session whose post() yields `mock_response`."""
    session = MagicMock()
    session.closed = False
    session.post.return_value.__aenter__.return_value = mock_response
    session.post.return_value.__aexit__.return_value = None
    session.close = AsyncMock()
    return session
