import math
import numpy as np
from enum import Enum
from abc import ABC, abstractmethod
from typing import Any, Optional, Sequence
from pydantic import BaseModel, ConfigDict, Field
from CogSystem.errors import DimensionMismatchError, MalformedResponseError, PromptError

DEFAULT_EMBEDDING_DIM = 1536


class PromptRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    template_id: str
    text: str = Field(min_length=1)
    temperature: float = Field(default=0.0, ge=0.0)
    tag: dict[str, Any] = Field(default_factory=dict)


class ProviderKind(str, Enum):
    LIVE = "live"
    REPLAY = "replay"


class CompletionResult(BaseModel):
    """Raw model output, kept verbatim (no trimming before parsing)."""

    model_config = ConfigDict(frozen=True)

    text: str
    provider: ProviderKind


class EmbeddingVector:
    """A finite real vector of a fixed dimension, backed by a read-only `numpy` array."""

    def __init__(self, values: Sequence[float] | np.ndarray, dim: Optional[int] = None) -> None:
        try:
            array = np.array(values, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise MalformedResponseError(f"Embedding is not a real vector: {e}") from e
        if array.ndim != 1:
            raise MalformedResponseError("Embedding must be one-dimensional")
        if not np.isfinite(array).all():
            raise MalformedResponseError("Embedding contains non-finite values")
        if dim is not None and array.shape[0] != dim:
            raise DimensionMismatchError(dim, array.shape[0])
        array.setflags(write=False)
        self.values = array

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    @property
    def norm(self) -> float:
        return math.sqrt(float(np.dot(self.values, self.values)))

    def tolist(self) -> list[float]:
        return [float(v) for v in self.values]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingVector):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"EmbeddingVector(dim={self.dim})"


class BaseLLM(ABC):
    def __init__(self) -> None:
        self.model_name: str
        self.embedding_dim: int
        self.kind: ProviderKind

    @abstractmethod
    def complete(self, req: PromptRequest) -> CompletionResult:
        """Forward pass of the LLM.

        Args:
            `req` (`PromptRequest`): The rendered prompt and its metadata. Never mutated.
        Raises:
            `NotImplementedError`: Should be implemented in subclasses.
        Returns:
            `CompletionResult`: The verbatim model output.
        """
        raise NotImplementedError("BaseLLM.complete() not implemented")

    @abstractmethod
    def embed(self, text: str) -> EmbeddingVector:
        """Embed `text` into a vector of `embedding_dim` dimensions.

        Raises:
            `NotImplementedError`: Should be implemented in subclasses.
        """
        raise NotImplementedError("BaseLLM.embed() not implemented")

    def __call__(self, prompt: str, template_id: str = "raw", **tag: Any) -> str:
        """Complete a bare prompt string and return the text."""
        return self.complete(PromptRequest(template_id=template_id, text=prompt, tag=tag)).text

    @staticmethod
    def _check_text(text: str) -> None:
        if not text:
            raise PromptError("Cannot embed empty text")
