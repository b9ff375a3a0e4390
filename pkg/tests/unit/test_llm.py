"""Unit tests for prompting, transcripts and completion transports."""

import json
from pathlib import Path
from unittest.mock import AsyncMock, MagicMock, patch

import aiohttp
import pytest

from stacksolve.core import Clear, Goal, On, Problem
from stacksolve.exceptions import ReplayMissError, SchemaError, TransportError
from stacksolve.llm import (
    FULL_PROBLEM_PARAMS,
    PARSER_PARAMS,
    PLANNER_PARAMS,
    CompletionClient,
    CompletionParams,
    LiveTransport,
    RecordTransport,
    ReplayTransport,
    Transcript,
    TranscriptEntry,
    build_parser_prompt,
    build_planner_prompt,
    check_disjoint,
    complete,
    extract_completion,
    format_goal,
    parser_examples,
    planner_examples,
    prompt_hash,
    truncate_at_stop,
)

from ..conftest import GOLDEN_DIR
from ..fixtures.sample_completions import (
    SUPPLEMENT_FULL_PROBLEM_COMPLETION,
    SUPPLEMENT_PARSER_COMPLETION,
    SUPPLEMENT_PLANNER_COMPLETION,
)

EMPTY_SHA256 = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def _golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


class TestPrompts:
    """Test few-shot prompt assembly."""

    def test_planner_prompt(self, supplement_problem: Problem) -> None:
        """Test the planner prompt for the worked example."""
        prompt = build_planner_prompt(planner_examples(), supplement_problem)
        assert prompt == _golden("planner_prompt.txt")
        assert prompt.endswith("Actions:\n")

    def test_parser_prompt(self, supplement_problem: Problem) -> None:
        """Test the goal-only parser prompt for the worked example."""
        prompt = build_parser_prompt(parser_examples(), supplement_problem)
        assert prompt == _golden("parser_prompt.txt")
        assert prompt.endswith("Goal predicate:\n(")

    def test_full_problem_parser_prompt(self, supplement_problem: Problem) -> None:
        """Test the whole-problem parser prompt for the worked example."""
        prompt = build_parser_prompt(parser_examples(full_problem=True), supplement_problem, full_problem=True)
        assert prompt == _golden("parser_prompt_full.txt")
        assert prompt.endswith("PDDL problem:\n(")

    @pytest.mark.parametrize("count", [0, 2, 4])
    def test_needs_three_examples(self, supplement_problem: Problem, count: int) -> None:
        """Test the fixed header size."""
        examples = (planner_examples() * 2)[:count]
        with pytest.raises(ValueError):
            build_planner_prompt(examples, supplement_problem)
        with pytest.raises(ValueError):
            build_parser_prompt((parser_examples() * 2)[:count], supplement_problem)

    def test_format_goal(self) -> None:
        """Test the goal predicate text."""
        goal = Goal((On("tissue box", "tablet"), Clear("notebook")))
        assert format_goal(goal) == "(and (on tissue-box tablet) (clear notebook))"

    def test_check_disjoint(self, supplement_problem: Problem) -> None:
        """Test that an evaluated problem may not repeat a header example."""
        examples = planner_examples()
        check_disjoint(examples, [supplement_problem])
        copy = examples[0].problem
        repeat = Problem("renamed", copy.objects, copy.init, copy.goal)
        with pytest.raises(ValueError):
            check_disjoint(examples, [supplement_problem, repeat])


class TestTranscript:
    """Test completion parameters and transcript files."""

    def test_prompt_hash(self) -> None:
        """Test the digest of the empty prompt."""
        assert prompt_hash("") == EMPTY_SHA256

    def test_role_params(self) -> None:
        """Test the fixed sampling settings of each role."""
        assert PLANNER_PARAMS == CompletionParams(0.05, 256, ("Initially:",))
        assert PARSER_PARAMS == CompletionParams(0.0, 128, (";",))
        assert FULL_PROBLEM_PARAMS == CompletionParams(0.0, 512, (";",))

    @pytest.mark.parametrize(
        ("temperature", "max_tokens", "stop"),
        [(-0.1, 10, (";",)), (0.0, 0, (";",)), (0.0, 10, ()), (0.0, 10, ("",))],
    )
    def test_invalid_params(self, temperature: float, max_tokens: int, stop: tuple[str, ...]) -> None:
        """Test parameter validation."""
        with pytest.raises(ValueError):
            CompletionParams(temperature, max_tokens, stop)

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("Move the plate onto the table.\nInitially:\nThe", "Move the plate onto the table.\n"),
            ("and (clear plate)); (and", "and (clear plate))"),
            ("no stop here", "no stop here"),
            ("", ""),
        ],
    )
    def test_truncate_at_stop(self, text: str, expected: str) -> None:
        """Test cutting at the earliest stop string."""
        assert truncate_at_stop(text, ("Initially:", ";")) == expected

    def test_load_supplement(
        self, supplement_problem: Problem, supplement_transcript: Transcript
    ) -> None:
        """Test lookup by prompt."""
        assert len(supplement_transcript) == 3
        planner = supplement_transcript.lookup(build_planner_prompt(planner_examples(), supplement_problem))
        assert planner is not None
        assert planner.completion == SUPPLEMENT_PLANNER_COMPLETION
        assert planner.params == PLANNER_PARAMS
        parser = supplement_transcript.lookup(build_parser_prompt(parser_examples(), supplement_problem))
        assert parser is not None
        assert parser.completion == SUPPLEMENT_PARSER_COMPLETION
        full = supplement_transcript.lookup(_golden("parser_prompt_full.txt"))
        assert full is not None
        assert full.completion == SUPPLEMENT_FULL_PROBLEM_COMPLETION
        assert full.params == FULL_PROBLEM_PARAMS
        assert supplement_transcript.lookup("unknown prompt") is None

    def test_save_and_load(self, tmp_path: Path) -> None:
        """Test writing a transcript and reading it back."""
        entries = [
            TranscriptEntry.create("first", PLANNER_PARAMS, "Move the plate onto the table.\n"),
            TranscriptEntry.create("second", PARSER_PARAMS, "and (clear plate))"),
        ]
        path = tmp_path / "transcript.jsonl"
        Transcript(entries).save(path)
        loaded = Transcript.load(path)
        assert loaded.entries == entries
        assert loaded.path == path
        assert list(loaded) == entries

    def test_save_needs_path(self) -> None:
        """Test saving a transcript not bound to a file."""
        with pytest.raises(ValueError):
            Transcript().save()

    def test_later_entry_wins(self) -> None:
        """Test that a re-recorded prompt replaces the earlier completion."""
        transcript = Transcript([TranscriptEntry.create("p", PARSER_PARAMS, "old")])
        transcript.append(TranscriptEntry.create("p", PARSER_PARAMS, "new"))
        entry = transcript.lookup("p")
        assert entry is not None
        assert entry.completion == "new"
        assert len(transcript) == 2

    def test_append_writes_through(self, tmp_path: Path) -> None:
        """Test that appends reach the backing file."""
        path = tmp_path / "transcript.jsonl"
        transcript = Transcript.load(path)
        assert len(transcript) == 0
        transcript.append(TranscriptEntry.create("p", PARSER_PARAMS, "c"))
        transcript.append(TranscriptEntry.create("q", PARSER_PARAMS, "d"))
        assert len(path.read_text(encoding="utf-8").splitlines()) == 2
        assert [entry.prompt for entry in Transcript.load(path)] == ["p", "q"]

    @pytest.mark.parametrize(
        "change",
        [
            {"prompt_hash": "0" * 64},
            {"prompt_hash": "not-a-hash"},
            {"params": {"temperature": 0.0, "max_tokens": 0, "stop": [";"]}},
            {"params": {"temperature": 0.0, "max_tokens": 5, "stop": []}},
            {"completion": None},
        ],
    )
    def test_malformed_entries(self, tmp_path: Path, change: dict) -> None:
        """Test that a bad entry names its line."""
        record = TranscriptEntry.create("p", PARSER_PARAMS, "c").to_record() | change
        path = tmp_path / "transcript.jsonl"
        path.write_text(json.dumps(record) + "\n", encoding="utf-8")
        with pytest.raises(SchemaError) as err:
            Transcript.load(path)
        assert err.value.line == 1

    def test_invalid_json(self, tmp_path: Path) -> None:
        """Test a truncated line."""
        path = tmp_path / "transcript.jsonl"
        path.write_text("\n{\n", encoding="utf-8")
        with pytest.raises(SchemaError) as err:
            Transcript.load(path)
        assert err.value.line == 2


class TestCompletionClient:
    """Test the HTTP completion client."""

    @pytest.fixture
    def client(self, mock_session: MagicMock) -> CompletionClient:
        """Return a client bound to the mock session."""
        client = CompletionClient("http://llm.test/v1/completions", api_key="secret", model="base-lm")
        client._session = mock_session
        return client

    async def test_complete(self, client: CompletionClient, mock_session: MagicMock) -> None:
        """Test the request payload, headers and parsed text."""
        text = await client.complete("Initially:\n", PLANNER_PARAMS)
        assert text == "Move the plate onto the table."
        mock_session.post.assert_called_once()
        call = mock_session.post.call_args
        assert call.args[0] == "http://llm.test/v1/completions"
        assert call.kwargs["json"] == {
            "prompt": "Initially:\n",
            "temperature": 0.05,
            "max_tokens": 256,
            "stop": ["Initially:"],
            "model": "base-lm",
        }
        assert call.kwargs["headers"] == {"Authorization": "Bearer secret"}

    async def test_no_key_no_model(self, mock_session: MagicMock) -> None:
        """Test that optional fields are left out."""
        client = CompletionClient("http://llm.test")
        client._session = mock_session
        await client.complete("p", PARSER_PARAMS)
        call = mock_session.post.call_args
        assert "model" not in call.kwargs["json"]
        assert call.kwargs["headers"] == {}

    async def test_http_error(self, client: CompletionClient, mock_response: MagicMock) -> None:
        """Test that an error status becomes a transport error."""
        mock_response.raise_for_status.side_effect = aiohttp.ClientResponseError(
            request_info=MagicMock(), history=(), status=503
        )
        with pytest.raises(TransportError):
            await client.complete("p", PARSER_PARAMS)

    async def test_timeout(self, client: CompletionClient, mock_session: MagicMock) -> None:
        """Test that a timeout becomes a transport error."""
        mock_session.post.side_effect = TimeoutError
        with pytest.raises(TransportError):
            await client.complete("p", PARSER_PARAMS)

    async def test_connection_error(self, client: CompletionClient, mock_session: MagicMock) -> None:
        """Test that a connection failure becomes a transport error."""
        mock_session.post.side_effect = aiohttp.ClientConnectionError("refused")
        with pytest.raises(TransportError):
            await client.complete("p", PARSER_PARAMS)

    async def test_response_without_text(self, client: CompletionClient, mock_response: MagicMock) -> None:
        """Test a body with no completion."""
        mock_response.json = AsyncMock(return_value={"error": "overloaded"})
        with pytest.raises(TransportError):
            await client.complete("p", PARSER_PARAMS)

    async def test_session_created_once(self) -> None:
        """Test lazy session creation and reuse."""
        client = CompletionClient("http://llm.test")
        with patch("stacksolve.llm.client.aiohttp.ClientSession") as session_cls:
            session_cls.return_value.closed = False
            first = await client._get_session()
            second = await client._get_session()
        assert first is second
        session_cls.assert_called_once()

    async def test_close_session(self, client: CompletionClient, mock_session: MagicMock) -> None:
        """Test closing an open session."""
        await client.close_session()
        mock_session.close.assert_awaited_once()

    async def test_close_closed_session(self, client: CompletionClient, mock_session: MagicMock) -> None:
        """Test that a closed session is left alone."""
        mock_session.closed = True
        await client.close_session()
        mock_session.close.assert_not_awaited()

    def test_from_env(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test configuration from the environment."""
        monkeypatch.setenv("LLM_ENDPOINT", "http://llm.test")
        monkeypatch.setenv("LLM_API_KEY", "secret")
        monkeypatch.delenv("LLM_MODEL", raising=False)
        client = CompletionClient.from_env()
        assert client.endpoint == "http://llm.test"
        assert client.api_key == "secret"
        assert client.model is None

    def test_from_env_needs_endpoint(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the missing-endpoint error."""
        monkeypatch.delenv("LLM_ENDPOINT", raising=False)
        with pytest.raises(TransportError):
            CompletionClient.from_env()

    @pytest.mark.parametrize(
        ("data", "expected"),
        [
            ({"completion": "a"}, "a"),
            ({"text": "b"}, "b"),
            ({"choices": [{"text": "c"}]}, "c"),
            ({"completion": 1, "text": "d"}, "d"),
        ],
    )
    def test_extract_completion(self, data: dict, expected: str) -> None:
        """Test the accepted response shapes."""
        assert extract_completion(data) == expected

    @pytest.mark.parametrize("data", [{}, [], "text", {"choices": []}, {"choices": [{"message": "x"}]}])
    def test_extract_completion_missing(self, data: object) -> None:
        """Test bodies without completion text."""
        with pytest.raises(TransportError):
            extract_completion(data)


class TestTransports:
    """Test the live, replay and record transports."""

    @pytest.fixture
    def fake_client(self) -> MagicMock:
        """Return a client whose completions run past the stop string."""
        client = MagicMock(spec=CompletionClient)
        client.complete = AsyncMock(return_value="Move the plate onto the table.\nInitially:\nThe cup")
        return client

    async def test_live_truncates(self, fake_client: MagicMock) -> None:
        """Test that live completions are cut at the stop string."""
        text = await LiveTransport(fake_client).complete("p", PLANNER_PARAMS)
        assert text == "Move the plate onto the table.\n"

    async def test_replay_hit(self, supplement_problem: Problem, supplement_transcript: Transcript) -> None:
        """Test serving a recorded completion verbatim."""
        prompt = build_planner_prompt(planner_examples(), supplement_problem)
        text = await complete(prompt, PLANNER_PARAMS, ReplayTransport(supplement_transcript))
        assert text == SUPPLEMENT_PLANNER_COMPLETION

    async def test_replay_miss(self, supplement_transcript: Transcript) -> None:
        """Test that an unrecorded prompt is an error naming its hash."""
        with pytest.raises(ReplayMissError) as err:
            await ReplayTransport(supplement_transcript).complete("", PLANNER_PARAMS)
        assert err.value.prompt_hash == EMPTY_SHA256

    async def test_record_then_replay(self, tmp_path: Path, fake_client: MagicMock) -> None:
        """Test that a recorded exchange replays offline."""
        path = tmp_path / "transcript.jsonl"
        recorder = RecordTransport(fake_client, Transcript.load(path))
        recorded = await recorder.complete("p", PLANNER_PARAMS)
        replayed = await ReplayTransport(Transcript.load(path)).complete("p", PLANNER_PARAMS)
        assert recorded == replayed == "Move the plate onto the table.\n"
        fake_client.complete.assert_awaited_once()
