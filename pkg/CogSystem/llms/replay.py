import os
import json
import threading
from typing import Optional
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError
from CogSystem.errors import (
    ConfigError,
    TranscriptError,
    TranscriptExhaustedError,
    TranscriptMismatchError,
)
from CogSystem.llms.basellm import (
    DEFAULT_EMBEDDING_DIM,
    BaseLLM,
    CompletionResult,
    EmbeddingVector,
    PromptRequest,
    ProviderKind,
)
from CogSystem.llms.embedding import pseudo_embed
from CogSystem.utils import append_jsonl, first_line


class TranscriptEntry(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    expect: Optional[str] = None
    response: str


class Transcript(BaseModel):
    """
    Canned completions consumed strictly in order. A transcript belongs to the first thread that consumes it;
    consuming it from another thread is an error.
    """

    entries: list[TranscriptEntry] = Field(default_factory=list)
    cursor: int = 0
    source: Optional[str] = None
    _owner: Optional[int] = PrivateAttr(default=None)

    @classmethod
    def from_jsonl(cls, path: str) -> "Transcript":
        """Read a transcript file: JSON Lines of `{"expect": "...", "response": "..."}` (`expect` optional).

        Raises:
            `ConfigError`: The file does not exist.
            `TranscriptError`: A line is not a valid entry.
        """
        if not os.path.isfile(path):
            raise ConfigError(f"Transcript not found: {path}")
        entries = []
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    entries.append(TranscriptEntry.model_validate(json.loads(line)))
                except (json.JSONDecodeError, ValidationError) as e:
                    raise TranscriptError(f"{path}:{lineno}: invalid transcript entry ({e})") from e
        logger.debug(f"Loaded transcript {path} with {len(entries)} entries")
        return cls(entries=entries, source=path)

    @property
    def remaining(self) -> int:
        return len(self.entries) - self.cursor

    def claim(self) -> None:
        ident = threading.get_ident()
        if self._owner is None:
            self._owner = ident
        elif self._owner != ident:
            raise TranscriptError("Transcript is already consumed by another session")


def replay_next(transcript: Transcript, req: PromptRequest) -> CompletionResult:
    """
    Return the entry at the cursor and advance it.

    Args:
        `transcript` (`Transcript`): The transcript; its cursor moves by one on success.
        `req` (`PromptRequest`): The request; when the entry has `expect`, it must occur in `req.text`.
    Raises:
        `TranscriptExhaustedError`: No entries remain.
        `TranscriptMismatchError`: The expected substring is absent. The cursor does not move.
    Returns:
        `CompletionResult`: The canned response, verbatim.
    """
    transcript.claim()
    if transcript.cursor >= len(transcript.entries):
        raise TranscriptExhaustedError(
            f"Transcript exhausted after {len(transcript.entries)} entries"
            + (f" ({transcript.source})" if transcript.source else "")
        )
    index = transcript.cursor
    entry = transcript.entries[index]
    if entry.expect is not None and entry.expect not in req.text:
        raise TranscriptMismatchError(index, entry.expect)
    transcript.cursor += 1
    return CompletionResult(text=entry.response, provider=ProviderKind.REPLAY)


class ReplayLLM(BaseLLM):
    """Deterministic backend: completions come from a transcript, embeddings from `pseudo_embed`."""

    def __init__(
        self,
        transcript: Transcript,
        embedding_dim: int = DEFAULT_EMBEDDING_DIM,
        seed: int = 0,
        model_name: str = "replay",
    ) -> None:
        self.transcript = transcript
        self.embedding_dim = embedding_dim
        self.seed = seed
        self.model_name = model_name
        self.kind = ProviderKind.REPLAY

    def complete(self, req: PromptRequest) -> CompletionResult:
        result = replay_next(self.transcript, req)
        logger.debug(
            f"[replay] {req.template_id} -> entry {self.transcript.cursor - 1}: {first_line(result.text)[:60]!r}"
        )
        return result

    def embed(self, text: str) -> EmbeddingVector:
        self._check_text(text)
        return pseudo_embed(text, self.embedding_dim, self.seed)


class RecordingLLM(BaseLLM):
    """Wrap a provider and append every completion to a transcript file, so the run can be replayed."""

    def __init__(self, llm: BaseLLM, record_path: str) -> None:
        self.llm = llm
        self.record_path = record_path
        self.model_name = llm.model_name
        self.embedding_dim = llm.embedding_dim
        self.kind = llm.kind
        self._lock = threading.Lock()

    def complete(self, req: PromptRequest) -> CompletionResult:
        result = self.llm.complete(req)
        with self._lock:
            append_jsonl(
                self.record_path, [{"expect": first_line(req.text), "response": result.text}]
            )
        return result

    def embed(self, text: str) -> EmbeddingVector:
        return self.llm.embed(text)
