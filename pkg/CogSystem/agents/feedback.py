import os
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError
from CogSystem.errors import ConfigError
from CogSystem.utils import read_json


class FeedbackEntry(BaseModel):
    """Free-text human feedback on one iteration; `question_id = None` addresses the whole iteration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    iteration: int = Field(ge=0)
    question_id: Optional[str] = None
    text: str


class FeedbackBook:
    def __init__(self, entries: Optional[list[FeedbackEntry]] = None) -> None:
        self.entries = list(entries or [])
        self._index: dict[tuple[int, Optional[str]], str] = {}
        for entry in self.entries:
            self._index.setdefault((entry.iteration, entry.question_id), entry.text)

    def lookup(self, iteration: int, question_id: str) -> Optional[str]:
        """Feedback for `question_id` on `iteration`, falling back to the iteration-level entry."""
        if (iteration, question_id) in self._index:
            return self._index[(iteration, question_id)]
        return self._index.get((iteration, None))

    def __len__(self) -> int:
        return len(self.entries)


def load_feedback(path: str) -> FeedbackBook:
    """Read a feedback file: a JSON list of `{iteration, question_id, text}` records.

    Raises:
        `ConfigError`: The file is missing or malformed.
    """
    if not os.path.isfile(path):
        raise ConfigError(f"Feedback file not found: {path}")
    try:
        entries = TypeAdapter(list[FeedbackEntry]).validate_python(read_json(path))
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid feedback file {path}: {e}") from e
    return FeedbackBook(entries)
