from CogSystem.memory.stm import ShortTermMemory, StmEntry
from CogSystem.memory.forgetting import FORGET_FRACTION, commit_knowledge, forget_count
from CogSystem.memory.ltm import (
    DEFAULT_RECALL_K,
    EmbedFn,
    KnowledgeItem,
    LongTermMemory,
    RecallHit,
    RecallResult,
    cosine_similarities,
)
