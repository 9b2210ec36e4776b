import os
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from CogSystem.agents.base import Agent, AgentKind
from CogSystem.agents.coggpt import CogGPT
from CogSystem.agents.cot import CoT
from CogSystem.agents.feedback import FeedbackBook
from CogSystem.agents.react import ReAct
from CogSystem.agents.reflexion import Reflexion
from CogSystem.bench import ProfileDoc
from CogSystem.errors import ConfigError
from CogSystem.llms import BaseLLM
from CogSystem.memory import DEFAULT_RECALL_K
from CogSystem.prompts import DEFAULT_TEMPLATE_DIR, TemplateRegistry
from CogSystem.utils import read_json

AGENT_CLASSES: dict[AgentKind, type[Agent]] = {
    AgentKind.COGGPT: CogGPT,
    AgentKind.COT: CoT,
    AgentKind.REACT: ReAct,
    AgentKind.REFLEXION: Reflexion,
}


class AgentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: AgentKind
    prompt_config: Optional[str] = None
    recall_k: int = Field(default=DEFAULT_RECALL_K, ge=1)
    max_parse_retries: int = Field(default=1, ge=0)
    skip_invalid_knowledge: bool = False
    template_dir: str = DEFAULT_TEMPLATE_DIR
    verify_templates: bool = True


def read_agent_config(path: str) -> AgentConfig:
    if not os.path.isfile(path):
        raise ConfigError(f"Agent config not found: {path}")
    try:
        return AgentConfig.model_validate(read_json(path))
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid agent config {path}: {e}") from e


def build_agent(
    config: AgentConfig,
    llm: BaseLLM,
    profile: ProfileDoc,
    feedback: Optional[FeedbackBook] = None,
    recall_k: Optional[int] = None,
) -> Agent:
    """Instantiate the agent class named by `config.kind`.

    Args:
        `config` (`AgentConfig`): The agent block.
        `llm` (`BaseLLM`): The provider of the session.
        `profile` (`ProfileDoc`): The initial profile.
        `feedback` (`Optional[FeedbackBook]`): Human feedback, read by ReAct and Reflexion. Defaults to `None`.
        `recall_k` (`Optional[int]`): Overrides `config.recall_k`. Defaults to `None`.
    Raises:
        `ConfigError`: A baseline has no prompt config.
    """
    agent_class = AGENT_CLASSES[config.kind]
    kwargs = dict(
        llm=llm,
        profile=profile,
        max_parse_retries=config.max_parse_retries,
        feedback=feedback,
    )
    if config.kind == AgentKind.COGGPT:
        return agent_class(
            registry=TemplateRegistry(config.template_dir, verify=config.verify_templates),
            recall_k=config.recall_k if recall_k is None else recall_k,
            skip_invalid_knowledge=config.skip_invalid_knowledge,
            prompt_config=config.prompt_config,
            **kwargs,
        )
    if config.prompt_config is None:
        raise ConfigError(f"Agent {config.kind.value} needs a prompt_config")
    return agent_class(prompt_config=config.prompt_config, **kwargs)
