from langchain.prompts import PromptTemplate
from CogSystem.agents.base import Agent, IterationRecord
from CogSystem.bench import InfoItem, Question
from CogSystem.errors import ConfigError
from CogSystem.utils import format_information


class BaselineAgent(Agent):
    """
    Shared behaviour of the prompting baselines: they keep the initial profile, read no long-term memory and
    answer from the information batch of the current iteration only.
    """

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.batch: list[InfoItem] = []

    def template(self, name: str) -> PromptTemplate:
        if name not in self.prompts or not isinstance(self.prompts[name], PromptTemplate):
            raise ConfigError(f"{type(self).__name__} needs a prompt template named {name!r}")
        return self.prompts[name]

    @property
    def information(self) -> str:
        return format_information([item.text for item in self.batch])

    def previous_feedback(self, question: Question) -> str:
        """Human feedback on the previous iteration for `question`, or `None` when there is none."""
        text = self.feedback.lookup(self.iteration - 1, question.id)
        return "None" if text is None else text

    def perceive(self, batch: list[InfoItem]) -> IterationRecord:
        self.iteration += 1
        self.batch = list(batch)
        return IterationRecord(
            iteration=self.iteration,
            source_ids=[item.id for item in batch],
            profile_after=self.initial_profile.copy(),
        )
