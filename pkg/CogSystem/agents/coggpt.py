from functools import partial
from typing import Optional
from loguru import logger
from CogSystem.agents.base import Agent, AgentKind, IterationRecord, QuestionAnswer
from CogSystem.bench import CANONICAL_KEYS, InfoItem, ProfileDoc, Question
from CogSystem.errors import ConfigError
from CogSystem.memory import (
    DEFAULT_RECALL_K,
    LongTermMemory,
    ShortTermMemory,
    commit_knowledge,
)
from CogSystem.prompts import (
    TemplateId,
    TemplateRegistry,
    default_registry,
    parse_interpretation,
    parse_knowledge_list,
    parse_profile_update,
)
from CogSystem.utils import format_information, format_memory


def merge_profile(previous: ProfileDoc, update: ProfileDoc) -> ProfileDoc:
    """Apply a profile update. Canonical keys the update leaves out keep their previous value."""
    missing = set(update.missing_keys)
    attributes = {
        key: previous.attributes[key] if key in missing else update.attributes[key]
        for key in CANONICAL_KEYS
    }
    return ProfileDoc(attributes, update.extras)


class CogGPT(Agent):
    """
    The iterative cognitive agent. Each iteration it perceives a batch into short-term memory, refines its
    profile with it, distills scored knowledge, forgets the lowest-scored share and stores the rest in
    long-term memory. Questions are answered from the current profile plus recalled knowledge.
    """

    kind = AgentKind.COGGPT

    def __init__(
        self,
        *args,
        registry: Optional[TemplateRegistry] = None,
        recall_k: int = DEFAULT_RECALL_K,
        skip_invalid_knowledge: bool = False,
        ltm: Optional[LongTermMemory] = None,
        **kwargs,
    ) -> None:
        super().__init__(*args, **kwargs)
        if recall_k < 1:
            raise ConfigError(f"recall_k must be at least 1, got {recall_k}")
        self.registry = registry or default_registry()
        self.recall_k = recall_k
        self.skip_invalid_knowledge = skip_invalid_knowledge
        self.stm = ShortTermMemory()
        self.ltm = ltm if ltm is not None else LongTermMemory(self.llm.embedding_dim)

    def run_iteration(self, batch: list[InfoItem]) -> IterationRecord:
        """Perceive, refine the profile, distill, forget and store one batch; advances the iteration.

        Args:
            `batch` (`list[InfoItem]`): The information items of this iteration.
        Raises:
            `IterationAbortedError`: A reply stayed unparseable after the retry.
            `MemoryStateError`: Short-term memory was not empty.
        Returns:
            `IterationRecord`: The iteration, without answers.
        """
        self.iteration += 1
        t = self.iteration
        self.stm.ingest(batch, t)
        try:
            memory = format_information(self.stm.texts)
            update = self.prompt(
                TemplateId.PROFILE_UPDATE.value,
                self.registry.render(
                    TemplateId.PROFILE_UPDATE, {"profile": self.profile.to_text(), "memory": memory}
                ),
                parse_profile_update,
            )
            self.profile = merge_profile(self.profile, update.updated_profile)
            drafts = self.prompt(
                TemplateId.KNOWLEDGE_DISTILL.value,
                self.registry.render(
                    TemplateId.KNOWLEDGE_DISTILL,
                    {"profile": self.profile.to_text(), "memory": memory},
                ),
                partial(parse_knowledge_list, skip_invalid=self.skip_invalid_knowledge),
            )
            retained, dropped = commit_knowledge(drafts)
            self.ltm.store(retained, self.llm.embed, t, self.stm.source_ids)
            source_ids = self.stm.source_ids
        finally:
            self.stm.clear()
        logger.info(
            f"Iteration {t}: {len(drafts)} knowledge drafts, {len(retained)} stored, LTM size {len(self.ltm)}"
        )
        return IterationRecord(
            iteration=t,
            source_ids=source_ids,
            assessments=update.assessments,
            thoughts=update.thoughts,
            profile_after=self.profile.copy(),
            retained=[draft.knowledge for draft in retained],
            dropped=[draft.knowledge for draft in dropped],
        )

    def perceive(self, batch: list[InfoItem]) -> IterationRecord:
        return self.run_iteration(batch)

    def answer_question(self, question: Question, k: Optional[int] = None) -> QuestionAnswer:
        """Answer from the current profile and the top-`k` recalled knowledge statements.

        Args:
            `question` (`Question`): The questionnaire item.
            `k` (`Optional[int]`): Recall depth. Defaults to the agent's `recall_k`.
        Raises:
            `MemoryStateError`: `k` is less than 1.
        """
        k = self.recall_k if k is None else k
        recall = self.ltm.recall(question.statement, k, self.llm.embed)
        statements = recall.statements
        parsed = self.prompt(
            TemplateId.INTERPRET.value,
            self.registry.render(
                TemplateId.INTERPRET,
                {
                    "profile": self.profile.to_text(),
                    "memory": format_memory(statements),
                    "question": question.statement,
                },
            ),
            parse_interpretation,
            question_id=question.id,
        )
        return QuestionAnswer(
            question_id=question.id,
            rating=parsed.rating,
            reasoning=parsed.thoughts,
            recall_trace=statements,
        )

    def forward(self, question: Question) -> QuestionAnswer:
        return self.answer_question(question)
