from enum import Enum
from abc import ABC, abstractmethod
from loguru import logger
from typing import Any, Callable, Optional, TypeVar
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_serializer,
    field_validator,
)
from CogSystem.bench import InfoItem, ProfileDoc, Question
from CogSystem.errors import CogError, IterationAbortedError, ParseError
from CogSystem.llms import BaseLLM, PromptRequest
from CogSystem.agents.feedback import FeedbackBook
from CogSystem.utils import digest, first_line, read_prompts

T = TypeVar("T")


class AgentKind(str, Enum):
    COGGPT = "coggpt"
    COT = "cot"
    REACT = "react"
    REFLEXION = "reflexion"


class Exchange(BaseModel):
    """One completion as it happened: the prompt digest, the raw reply and whether it parsed."""

    model_config = ConfigDict(frozen=True)

    iteration: int
    template_id: str
    tag: dict[str, Any] = Field(default_factory=dict)
    attempt: int
    prompt_digest: str
    raw_reply: Optional[str] = None
    ok: bool
    error: Optional[str] = None


class QuestionAnswer(BaseModel):
    model_config = ConfigDict(frozen=True)

    question_id: str
    rating: int = Field(ge=1, le=5)
    reasoning: str
    recall_trace: list[str] = Field(default_factory=list)
    reflection: Optional[str] = None


class IterationRecord(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    iteration: int
    source_ids: list[str] = Field(default_factory=list)
    assessments: str = ""
    thoughts: str = ""
    profile_after: ProfileDoc
    retained: list[str] = Field(default_factory=list)
    dropped: list[str] = Field(default_factory=list)
    answers: list[QuestionAnswer] = Field(default_factory=list)

    @field_validator("profile_after", mode="before")
    @classmethod
    def _read_profile(cls, value: Any) -> Any:
        return ProfileDoc.from_mapping(value) if isinstance(value, dict) else value

    @field_serializer("profile_after")
    def _dump_profile(self, profile: ProfileDoc) -> dict[str, str]:
        return profile.to_dict()

    @computed_field
    @property
    def retained_count(self) -> int:
        return len(self.retained)

    @computed_field
    @property
    def dropped_count(self) -> int:
        return len(self.dropped)


class Agent(ABC):
    """
    The base class of agents. `perceive` consumes one iteration's information batch and `forward` answers one
    questionnaire item. Every completion goes through `prompt`, which records an `Exchange` and retries a reply
    that fails to parse.
    """

    kind: AgentKind

    def __init__(
        self,
        llm: BaseLLM,
        profile: ProfileDoc,
        prompts: dict = dict(),
        prompt_config: Optional[str] = None,
        max_parse_retries: int = 1,
        feedback: Optional[FeedbackBook] = None,
        *args,
        **kwargs,
    ) -> None:
        """Initialize the agent.

        Args:
            `llm` (`BaseLLM`): The provider every completion goes to.
            `profile` (`ProfileDoc`): The initial profile.
            `prompts` (`dict`, optional): Prompt templates of the agent. Read from `prompt_config` when it is given. Defaults to `dict()`.
            `prompt_config` (`Optional[str]`): Path to the prompt config file. Defaults to `None`.
            `max_parse_retries` (`int`, optional): Re-sends of an identical prompt after a reply fails to parse. Defaults to `1`.
            `feedback` (`Optional[FeedbackBook]`): Human feedback on earlier iterations. Defaults to `None`.
        """
        self.llm = llm
        if prompt_config is not None:
            prompts = read_prompts(prompt_config)
        self.prompts = prompts
        self.max_parse_retries = max_parse_retries
        self.feedback = feedback or FeedbackBook()
        self.initial_profile = profile.copy()
        self.profile = profile.copy()
        self.iteration = 0
        self.exchanges: list[Exchange] = []

    def observation(self, message: str, log_head: str = "") -> None:
        logger.debug(f"{log_head}Observation: {message}")

    def prompt(
        self, template_id: str, text: str, parse: Callable[[str], T], **tag: Any
    ) -> T:
        """Complete `text` and parse the reply, re-sending the identical prompt after a parse failure.

        Args:
            `template_id` (`str`): Which template produced `text`.
            `text` (`str`): The rendered prompt.
            `parse` (`Callable[[str], T]`): Parser of the reply.
            `**tag` (`Any`): Extra metadata recorded with the exchange, e.g. the question id.
        Raises:
            `IterationAbortedError`: Every attempt failed to parse.
        Returns:
            `T`: The parsed reply.
        """
        req = PromptRequest(template_id=template_id, text=text, tag=tag)
        prompt_digest = digest(text)
        error: Optional[ParseError] = None
        for attempt in range(self.max_parse_retries + 1):
            try:
                reply = self.llm.complete(req).text
            except CogError as e:
                self._record(template_id, tag, attempt, prompt_digest, None, e)
                raise
            self.observation(first_line(reply)[:80], log_head=f"[t={self.iteration}] {template_id} ")
            try:
                result = parse(reply)
            except ParseError as e:
                self._record(template_id, tag, attempt, prompt_digest, reply, e)
                logger.warning(f"[t={self.iteration}] {template_id}: unparseable reply ({e})")
                error = e
                continue
            self._record(template_id, tag, attempt, prompt_digest, reply, None)
            return result
        raise IterationAbortedError(self.iteration, f"{template_id}: {error}")

    def _record(
        self,
        template_id: str,
        tag: dict,
        attempt: int,
        prompt_digest: str,
        reply: Optional[str],
        error: Optional[Exception],
    ) -> None:
        self.exchanges.append(
            Exchange(
                iteration=self.iteration,
                template_id=template_id,
                tag=dict(tag),
                attempt=attempt,
                prompt_digest=prompt_digest,
                raw_reply=reply,
                ok=error is None,
                error=None if error is None else str(error),
            )
        )

    def __call__(self, *args: Any, **kwargs: Any) -> Any:
        return self.forward(*args, **kwargs)

    @abstractmethod
    def perceive(self, batch: list[InfoItem]) -> IterationRecord:
        """Consume the next iteration's information batch and advance the iteration counter.

        Raises:
            `NotImplementedError`: Should be implemented in subclasses.
        Returns:
            `IterationRecord`: The record of the iteration, without answers.
        """
        raise NotImplementedError("Agent.perceive() not implemented")

    @abstractmethod
    def forward(self, question: Question) -> QuestionAnswer:
        """Answer one questionnaire item.

        Raises:
            `NotImplementedError`: Should be implemented in subclasses.
        """
        raise NotImplementedError("Agent.forward() not implemented")
