import os
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from CogSystem.agents import AgentKind
from CogSystem.bench import Variant
from CogSystem.errors import ConfigError
from CogSystem.llms import ProviderConfig, read_provider_config
from CogSystem.utils import read_json


class RunConfig(BaseModel):
    """
    An experiment manifest. `transcript`, `record` and `feedback` may contain `{topic}`, `{profile}` and
    `{agent}` placeholders, filled per session. Empty `topics` or `profiles` select every one in the benchmark.
    """

    model_config = ConfigDict(extra="forbid")

    bench_path: str
    variant: Optional[Variant] = None
    topics: list[str] = Field(default_factory=list)
    profiles: list[str] = Field(default_factory=list)
    agent: AgentKind = AgentKind.COGGPT
    agent_config: Optional[str] = None
    provider: ProviderConfig = Field(default_factory=ProviderConfig)
    provider_config: Optional[str] = None
    transcript: Optional[str] = None
    record: Optional[str] = None
    feedback: Optional[str] = None
    recall_k: Optional[int] = Field(default=None, ge=1)
    strict: bool = True
    output_dir: str = "runs"
    seed: int = 0
    jobs: int = Field(default=1, ge=1)

    @property
    def agent_config_path(self) -> str:
        return self.agent_config or os.path.join("config", "agents", f"{self.agent.value}.json")

    def resolved_provider(self) -> ProviderConfig:
        """The provider block: `provider_config` when set, else the inline block; the run seed wins."""
        provider = (
            read_provider_config(self.provider_config)
            if self.provider_config is not None
            else self.provider
        )
        return provider.model_copy(update={"seed": self.seed})

    def session_path(self, template: Optional[str], topic_id: str, profile_name: str) -> Optional[str]:
        if template is None:
            return None
        try:
            return template.format(topic=topic_id, profile=profile_name, agent=self.agent.value)
        except (KeyError, IndexError, ValueError) as e:
            raise ConfigError(f"Bad placeholder in path {template!r}: {e}") from e


def read_run_config(path: Optional[str] = None, **overrides) -> RunConfig:
    """Read a run manifest and apply command-line overrides (`None` values are ignored).

    Raises:
        `ConfigError`: The manifest is missing or invalid.
    """
    data = {}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f"Run config not found: {path}")
        data = read_json(path)
    data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return RunConfig.model_validate(data)
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid run config: {e}") from e
