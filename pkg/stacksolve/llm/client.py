"""Text-completion client and the live, replay and record transports."""

from __future__ import annotations

import asyncio
import logging
import os
from typing import Any, Protocol

import aiohttp

from ..const import ENV_LLM_API_KEY, ENV_LLM_ENDPOINT, ENV_LLM_MODEL, REQUEST_TIMEOUT
from ..exceptions import ReplayMissError, TransportError
from .transcript import CompletionParams, Transcript, TranscriptEntry, prompt_hash, truncate_at_stop

_LOGGER = logging.getLogger(__name__)


def extract_completion(data: Any) -> str:
    """Pull completion text out of a provider response.

    Tries `completion`, then `text`, then `choices[0].text`.

    Raises:
        TransportError: if none is present.
    """
    if isinstance(data, dict):
        for key in ("completion", "text"):
            if isinstance(data.get(key), str):
                return str(data[key])
        choices = data.get("choices")
        if isinstance(choices, list) and choices and isinstance(choices[0], dict):
            text = choices[0].get("text")
            if isinstance(text, str):
                return text
    raise TransportError("Response carries no completion text")


class CompletionClient:
    """HTTP client for a text-completion endpoint."""

    def __init__(
        self,
        endpoint: str,
        api_key: str | None = None,
        model: str | None = None,
        timeout: float = REQUEST_TIMEOUT,
    ) -> None:
        """Initialize the client.

        Args:
            endpoint: Completion URL
            api_key: Bearer token, if the endpoint needs one
            model: Model name forwarded in the request body
            timeout: Total request timeout in seconds
        """
        self.endpoint = endpoint
        self.api_key = api_key
        self.model = model
        self.timeout = timeout
        self._session: aiohttp.ClientSession | None = None

    @classmethod
    def from_env(cls) -> CompletionClient:
        """Build a client from LLM_ENDPOINT, LLM_API_KEY and LLM_MODEL.

        Raises:
            TransportError: if LLM_ENDPOINT is unset.
        """
        endpoint = os.environ.get(ENV_LLM_ENDPOINT)
        if not endpoint:
            raise TransportError(f"{ENV_LLM_ENDPOINT} is not set")
        return cls(endpoint, os.environ.get(ENV_LLM_API_KEY), os.environ.get(ENV_LLM_MODEL))

    async def _get_session(self) -> aiohttp.ClientSession:
        """Get or create aiohttp session."""
        if self._session is None or self._session.closed:
            self._session = aiohttp.ClientSession()
        return self._session

    async def complete(self, prompt: str, params: CompletionParams) -> str:
        """Post one completion request and return the raw completion text.

        Raises:
            TransportError: on network, HTTP or response-format errors.
        """
        payload: dict[str, Any] = {"prompt": prompt, **params.as_dict()}
        if self.model:
            payload["model"] = self.model
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        _LOGGER.debug("[LLM] POST %s prompt %s", self.endpoint, prompt_hash(prompt)[:12])
        try:
            session = await self._get_session()
            async with session.post(
                self.endpoint,
                json=payload,
                headers=headers,
                timeout=aiohttp.ClientTimeout(total=self.timeout),
            ) as response:
                response.raise_for_status()
                data = await response.json()
        except (aiohttp.ClientError, TimeoutError) as err:
            raise TransportError(f"Completion request failed: {err}") from err
        return extract_completion(data)

    async def close_session(self) -> None:
        """Close aiohttp session."""
        if self._session and not self._session.closed:
            await self._session.close()


class Transport(Protocol):
    async def complete(self, prompt: str, params: CompletionParams) -> str: ...


class LiveTransport:
    """Calls the endpoint; completions are cut at the first stop string."""

    def __init__(self, client: CompletionClient) -> None:
        self.client = client

    async def complete(self, prompt: str, params: CompletionParams) -> str:
        return truncate_at_stop(await self.client.complete(prompt, params), params.stop)


class ReplayTransport:
    """Serves completions from a transcript without network access."""

    def __init__(self, transcript: Transcript) -> None:
        self.transcript = transcript

    async def complete(self, prompt: str, params: CompletionParams) -> str:
        entry = self.transcript.lookup(prompt)
        if entry is None:
            raise ReplayMissError(prompt_hash(prompt))
        _LOGGER.debug("[Replay] hit %s", entry.prompt_hash[:12])
        return entry.completion


class RecordTransport:
    """Calls the endpoint and appends each exchange to a transcript."""

    def __init__(self, client: CompletionClient, transcript: Transcript) -> None:
        self.live = LiveTransport(client)
        self.transcript = transcript
        self._lock = asyncio.Lock()

    async def complete(self, prompt: str, params: CompletionParams) -> str:
        completion = await self.live.complete(prompt, params)
        async with self._lock:
            self.transcript.append(TranscriptEntry.create(prompt, params, completion))
        return completion


async def complete(prompt: str, params: CompletionParams, transport: Transport) -> str:
    """Run one completion through `transport`."""
    return await transport.complete(prompt, params)
