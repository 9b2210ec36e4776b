import os
from typing import Any, Optional
from loguru import logger
from tqdm import tqdm
from pydantic import BaseModel, Field, ValidationError
from CogSystem.agents import (
    Agent,
    CogGPT,
    Exchange,
    FeedbackBook,
    IterationRecord,
    QuestionAnswer,
    build_agent,
    load_feedback,
    read_agent_config,
)
from CogSystem.bench import BenchmarkSet, load_benchmark, plan_iterations
from CogSystem.errors import (
    AgentError,
    BenchmarkError,
    ConfigError,
    MemoryStateError,
    ParseError,
    ProviderError,
)
from CogSystem.llms import get_llm
from CogSystem.system.base import System
from CogSystem.system.config import RunConfig
from CogSystem.utils import dumps_json, read_json, write_text_atomic


class SessionLog(BaseModel):
    """
    Everything one agent did on one (topic, profile) pair: the answers of the 0th pass, one record per
    iteration and every completion exchanged with the provider.
    """

    agent: str
    variant: str
    bench: str
    topic_id: str
    profile_name: str
    config: dict[str, Any] = Field(default_factory=dict)
    initial_profile: dict[str, str] = Field(default_factory=dict)
    initial_answers: list[QuestionAnswer] = Field(default_factory=list)
    iterations: list[IterationRecord] = Field(default_factory=list)
    exchanges: list[Exchange] = Field(default_factory=list)
    ltm_size: int = 0
    complete: bool = True
    error: Optional[str] = None

    def answer_sets(self) -> dict[int, list[QuestionAnswer]]:
        """Answers per iteration, the 0th pass included."""
        sets = {0: self.initial_answers}
        for record in self.iterations:
            sets[record.iteration] = record.answers
        return sets

    def to_json(self) -> str:
        return dumps_json(self.model_dump(mode="json"))

    @classmethod
    def load(cls, path: str) -> "SessionLog":
        """Read a `session.json` file.

        Raises:
            `ConfigError`: The file is missing or not a session log.
        """
        if not os.path.isfile(path):
            raise ConfigError(f"Session log not found: {path}")
        try:
            return cls.model_validate(read_json(path))
        except (ValueError, ValidationError) as e:
            raise ConfigError(f"Invalid session log {path}: {e}") from e


def run_session(
    bench: BenchmarkSet,
    topic_id: str,
    profile_name: str,
    agent: Agent,
    strict: bool = True,
    config: Optional[dict[str, Any]] = None,
    progress: bool = True,
) -> SessionLog:
    """Run one agent through a topic: the 0th answer pass, then perceive and answer for every iteration.

    Args:
        `bench` (`BenchmarkSet`): The benchmark.
        `topic_id` (`str`): The topic.
        `profile_name` (`str`): The profile the agent was built with.
        `agent` (`Agent`): A fresh agent.
        `strict` (`bool`, optional): Require the canonical iteration schedule. Defaults to `True`.
        `config` (`Optional[dict[str, Any]]`): Settings echoed into the log. Defaults to `None`.
        `progress` (`bool`, optional): Show a progress bar. Defaults to `True`.
    Raises:
        `BenchmarkError`: The topic or profile does not exist, or the schedule is not canonical.
    Returns:
        `SessionLog`: The log; `complete` is `False` when an iteration aborted.
    """
    try:
        questionnaire = bench.questionnaire(topic_id)
        profile = bench.profile(profile_name)
    except KeyError as e:
        raise BenchmarkError(str(e.args[0])) from e
    plan = plan_iterations(bench, topic_id, strict=strict)
    log = SessionLog(
        agent=agent.kind.value,
        variant=bench.variant.value,
        bench=bench.name,
        topic_id=topic_id,
        profile_name=profile_name,
        config=dict(config or {}),
        initial_profile=profile.to_dict(),
    )
    logger.info(
        f"Session {agent.kind.value} {topic_id}/{profile_name}: T={plan.T}, m={questionnaire.m}"
    )
    try:
        for question in questionnaire.questions:
            log.initial_answers.append(agent(question))
        for ids in tqdm(
            plan.iterations, desc=f"{topic_id}/{profile_name}", leave=False, disable=not progress
        ):
            record = agent.perceive(bench.items(topic_id, ids))
            log.iterations.append(record)
            for question in questionnaire.questions:
                record.answers.append(agent(question))
    except (AgentError, ProviderError, MemoryStateError, ParseError) as e:
        log.complete = False
        log.error = str(e)
        logger.error(f"Session {topic_id}/{profile_name} aborted: {e}")
    finally:
        log.exchanges = list(agent.exchanges)
        if isinstance(agent, CogGPT):
            log.ltm_size = len(agent.ltm)
    return log


class CognitiveSystem(System):
    """
    Runs sessions described by a `RunConfig` and writes them under
    `<output_dir>/<agent>/<variant>/<topic>__<profile>/`.
    """

    def init(self, *args, **kwargs) -> None:
        self.bench = load_benchmark(self.config.bench_path)
        if self.config.variant is not None and self.config.variant != self.bench.variant:
            raise ConfigError(
                f"Run asks for variant {self.config.variant.value} but {self.config.bench_path} is variant {self.bench.variant.value}"
            )
        self.agent_config = read_agent_config(self.config.agent_config_path)
        if self.agent_config.kind != self.config.agent:
            raise ConfigError(
                f"Agent config {self.config.agent_config_path} is for {self.agent_config.kind.value}, not {self.config.agent.value}"
            )
        self.provider = self.config.resolved_provider()
        if self.provider.mode == "replay" and self.config.transcript is None:
            raise ConfigError("Replay mode requires a transcript")
        self.progress = kwargs.get("progress", True)

    def pairs(self) -> list[tuple[str, str]]:
        """The (topic, profile) pairs of the run, in benchmark order."""
        topics = self.config.topics or self.bench.topics
        profiles = self.config.profiles or list(self.bench.profiles)
        for topic_id in topics:
            if topic_id not in self.bench.topics:
                raise ConfigError(f"Unknown topic {topic_id!r}")
        for name in profiles:
            if name not in self.bench.profiles:
                raise ConfigError(f"Unknown profile {name!r}")
        return [(topic_id, name) for topic_id in topics for name in profiles]

    def session_dir(self, topic_id: str, profile_name: str) -> str:
        return os.path.join(
            self.config.output_dir,
            self.config.agent.value,
            self.bench.variant.value,
            f"{topic_id}__{profile_name}",
        )

    def _feedback(self, topic_id: str, profile_name: str) -> FeedbackBook:
        path = self.config.session_path(self.config.feedback, topic_id, profile_name)
        return FeedbackBook() if path is None else load_feedback(path)

    def echo(self, topic_id: str, profile_name: str) -> dict[str, Any]:
        return {
            "agent": self.config.agent.value,
            "bench": self.bench.name,
            "variant": self.bench.variant.value,
            "topic_id": topic_id,
            "profile_name": profile_name,
            "recall_k": self.agent_config.recall_k if self.config.recall_k is None else self.config.recall_k,
            "max_parse_retries": self.agent_config.max_parse_retries,
            "strict": self.config.strict,
            "provider": self.provider.mode,
            "model": self.provider.model if self.provider.mode == "live" else "replay",
            "embedding_dim": self.provider.embedding_dim,
            "seed": self.provider.seed,
        }

    def forward(self, topic_id: str, profile_name: str) -> SessionLog:
        """Run and persist one session.

        Returns:
            `SessionLog`: The session log, also written to `session.json`.
        """
        llm = get_llm(
            self.provider,
            transcript=self.config.session_path(self.config.transcript, topic_id, profile_name),
            record_path=self.config.session_path(self.config.record, topic_id, profile_name),
        )
        agent = build_agent(
            self.agent_config,
            llm,
            self.bench.profile(profile_name),
            feedback=self._feedback(topic_id, profile_name),
            recall_k=self.config.recall_k,
        )
        log = run_session(
            self.bench,
            topic_id,
            profile_name,
            agent,
            strict=self.config.strict,
            config=self.echo(topic_id, profile_name),
            progress=self.progress,
        )
        out_dir = self.session_dir(topic_id, profile_name)
        write_text_atomic(os.path.join(out_dir, "session.json"), log.to_json())
        if isinstance(agent, CogGPT):
            agent.ltm.save(os.path.join(out_dir, "ltm.jsonl"))
        logger.info(f"Wrote {out_dir}/session.json (complete={log.complete})")
        self.finished = True
        return log
