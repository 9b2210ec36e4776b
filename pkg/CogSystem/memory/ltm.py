import os
import numpy as np
from typing import Callable, Optional
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from CogSystem.errors import (
    ConfigError,
    DimensionMismatchError,
    MalformedResponseError,
    MemoryStateError,
)
from CogSystem.llms import DEFAULT_EMBEDDING_DIM, EmbeddingVector
from CogSystem.prompts import KnowledgeDraft
from CogSystem.utils import append_jsonl, read_jsonl, write_jsonl

EmbedFn = Callable[[str], EmbeddingVector]
DEFAULT_RECALL_K = 5


class KnowledgeItem(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    statement: str = Field(min_length=1)
    score: int = Field(ge=1, le=5)
    embedding: EmbeddingVector
    iteration: int
    source_ids: list[str] = Field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "statement": self.statement,
            "score": self.score,
            "iteration": self.iteration,
            "source_ids": list(self.source_ids),
            "embedding": self.embedding.tolist(),
        }


class RecallHit(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    item: KnowledgeItem
    similarity: float


class RecallResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    hits: list[RecallHit] = Field(default_factory=list)

    @property
    def statements(self) -> list[str]:
        return [hit.item.statement for hit in self.hits]


def cosine_similarities(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Cosine similarity of every row of `matrix` with `query`; zero vectors score 0."""
    norms = np.linalg.norm(matrix, axis=1) * np.linalg.norm(query)
    dots = matrix @ query
    return np.divide(dots, norms, out=np.zeros_like(dots), where=norms > 0)


class LongTermMemory:
    """
    Append-only store of scored knowledge with fixed-dimension embeddings. When bound to `persist_path`,
    every committed batch is appended there as JSON Lines.
    """

    def __init__(self, dim: int = DEFAULT_EMBEDDING_DIM, persist_path: Optional[str] = None) -> None:
        self.dim = dim
        self.persist_path = persist_path
        self.items: list[KnowledgeItem] = []
        self._matrix = np.zeros((0, dim))

    def __len__(self) -> int:
        return len(self.items)

    def _append(self, items: list[KnowledgeItem]) -> None:
        self.items.extend(items)
        if items:
            rows = np.stack([item.embedding.values for item in items])
            self._matrix = np.vstack([self._matrix, rows])

    def store(
        self,
        retained: list[KnowledgeDraft],
        embed_fn: EmbedFn,
        iteration: int,
        source_ids: Optional[list[str]] = None,
    ) -> int:
        """Embed and append retained knowledge. Nothing is appended unless every embedding succeeds.

        Args:
            `retained` (`list[KnowledgeDraft]`): Drafts that survived forgetting, in draft order.
            `embed_fn` (`EmbedFn`): Embedding function of the provider.
            `iteration` (`int`): Iteration that produced the knowledge.
            `source_ids` (`Optional[list[str]]`): Information items the knowledge was distilled from. Defaults to `None`.
        Raises:
            `DimensionMismatchError`: An embedding does not match the store dimension.
        Returns:
            `int`: Number of items appended.
        """
        items = []
        for draft in retained:
            vector = embed_fn(draft.knowledge)
            if vector.dim != self.dim:
                raise DimensionMismatchError(self.dim, vector.dim)
            items.append(
                KnowledgeItem(
                    statement=draft.knowledge,
                    score=draft.score,
                    embedding=vector,
                    iteration=iteration,
                    source_ids=list(source_ids or []),
                )
            )
        if self.persist_path is not None and items:
            append_jsonl(self.persist_path, [item.to_record() for item in items])
        self._append(items)
        logger.debug(f"LTM stored {len(items)} items (size {len(self.items)})")
        return len(items)

    def recall(self, query_text: str, k: int, embed_fn: EmbedFn) -> RecallResult:
        """Top-`k` items by cosine similarity to `query_text`; equal similarities keep append order.

        Raises:
            `MemoryStateError`: `k` is less than 1.
        """
        if k < 1:
            raise MemoryStateError(f"Recall depth must be at least 1, got {k}")
        if not self.items:
            return RecallResult()
        query = embed_fn(query_text)
        if query.dim != self.dim:
            raise DimensionMismatchError(self.dim, query.dim)
        sims = cosine_similarities(self._matrix, query.values)
        order = np.argsort(-sims, kind="stable")[: min(k, len(self.items))]
        return RecallResult(
            hits=[RecallHit(item=self.items[i], similarity=float(sims[i])) for i in order]
        )

    def save(self, path: str) -> None:
        write_jsonl(path, [item.to_record() for item in self.items])

    @classmethod
    def load(cls, path: str, dim: int = DEFAULT_EMBEDDING_DIM, bind: bool = False) -> "LongTermMemory":
        """Read an `ltm.jsonl` snapshot.

        Args:
            `path` (`str`): The snapshot file.
            `dim` (`int`, optional): Expected embedding dimension. Defaults to `1536`.
            `bind` (`bool`, optional): Keep appending new commits to `path`. Defaults to `False`.
        Raises:
            `ConfigError`: The file does not exist.
            `MemoryStateError`: A line is not a valid knowledge record.
        """
        if not os.path.isfile(path):
            raise ConfigError(f"LTM snapshot not found: {path}")
        store = cls(dim, persist_path=path if bind else None)
        items = []
        for lineno, record in enumerate(read_jsonl(path), start=1):
            try:
                items.append(
                    KnowledgeItem(
                        statement=record["statement"],
                        score=record["score"],
                        embedding=EmbeddingVector(record["embedding"], dim),
                        iteration=record["iteration"],
                        source_ids=record.get("source_ids", []),
                    )
                )
            except (KeyError, ValueError, MalformedResponseError, DimensionMismatchError) as e:
                raise MemoryStateError(f"{path}:{lineno}: invalid knowledge record ({e})") from e
        store._append(items)
        return store
