from typing import Literal, Optional
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from CogSystem.errors import ConfigError
from CogSystem.llms.basellm import DEFAULT_EMBEDDING_DIM
from CogSystem.utils import read_json


class ProviderConfig(BaseModel):
    """The provider block of a run: live endpoint settings or replay mode."""

    model_config = ConfigDict(extra="forbid")

    mode: Literal["live", "replay"] = "replay"
    endpoint: Optional[str] = None
    model: str = "gpt-4-0613"
    embedding_model: str = "text-embedding-ada-002"
    embedding_dim: int = Field(default=DEFAULT_EMBEDDING_DIM, ge=1)
    api_key_env: str = "OPENAI_API_KEY"
    max_retries: int = Field(default=3, ge=0)
    backoff_base: float = Field(default=1.0, ge=0.0)
    timeout: float = Field(default=60.0, gt=0.0)
    rate_limit: float = Field(default=0.0, ge=0.0)
    seed: int = 0


def read_provider_config(path: str) -> ProviderConfig:
    """Read a provider config file.

    Raises:
        `ConfigError`: The file is missing or invalid.
    """
    try:
        return ProviderConfig.model_validate(read_json(path))
    except FileNotFoundError as e:
        raise ConfigError(f"Provider config not found: {path}") from e
    except ValidationError as e:
        raise ConfigError(f"Invalid provider config {path}: {e}") from e
