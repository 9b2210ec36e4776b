from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from CogSystem.bench import InfoItem
from CogSystem.errors import MemoryStateError


class StmEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    source_id: str
    text: str = Field(min_length=1)
    iteration: int


class ShortTermMemory:
    """
    Holds the textual information of one iteration's batch. It is full once the batch is ingested and must be
    cleared before the next batch arrives.
    """

    def __init__(self) -> None:
        self.entries: list[StmEntry] = []

    def ingest(self, items: list[InfoItem], iteration: int) -> None:
        """Perceive a batch of information items, one entry per item in batch order.

        Raises:
            `MemoryStateError`: The memory still holds the previous batch, or an item has no text.
        """
        if self.entries:
            raise MemoryStateError(
                f"Short-term memory still holds {len(self.entries)} entries; it was not cleared"
            )
        entries = []
        for item in items:
            if not item.text.strip():
                raise MemoryStateError(f"Information item {item.id} has no text")
            entries.append(StmEntry(source_id=item.id, text=item.text, iteration=iteration))
        self.entries = entries
        logger.debug(f"STM ingested {len(entries)} items at iteration {iteration}")

    def clear(self) -> None:
        self.entries = []

    @property
    def texts(self) -> list[str]:
        return [entry.text for entry in self.entries]

    @property
    def source_ids(self) -> list[str]:
        return [entry.source_id for entry in self.entries]

    def __len__(self) -> int:
        return len(self.entries)
