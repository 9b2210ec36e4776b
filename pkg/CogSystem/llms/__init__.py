from typing import Optional
from CogSystem.errors import ConfigError
from CogSystem.llms.basellm import (
    DEFAULT_EMBEDDING_DIM,
    BaseLLM,
    CompletionResult,
    EmbeddingVector,
    PromptRequest,
    ProviderKind,
)
from CogSystem.llms.config import ProviderConfig, read_provider_config
from CogSystem.llms.embedding import fnv1a_64, pseudo_embed
from CogSystem.llms.replay import (
    RecordingLLM,
    ReplayLLM,
    Transcript,
    TranscriptEntry,
    replay_next,
)


def get_llm(
    config: ProviderConfig,
    transcript: Optional[str] = None,
    record_path: Optional[str] = None,
) -> BaseLLM:
    """Build the provider described by `config`.

    Args:
        `config` (`ProviderConfig`): The provider block.
        `transcript` (`Optional[str]`): Transcript file, required in replay mode. Defaults to `None`.
        `record_path` (`Optional[str]`): In live mode, append every completion to this transcript file. Defaults to `None`.
    Raises:
        `ConfigError`: Replay mode without a transcript, or live mode without an endpoint.
    Returns:
        `BaseLLM`: The provider.
    """
    if config.mode == "replay":
        if transcript is None:
            raise ConfigError("Replay mode requires a transcript")
        return ReplayLLM(
            Transcript.from_jsonl(transcript),
            embedding_dim=config.embedding_dim,
            seed=config.seed,
        )
    if not config.endpoint:
        raise ConfigError("Live mode requires an endpoint")
    from CogSystem.llms.openai import AnyOpenAILLM

    llm: BaseLLM = AnyOpenAILLM(config)
    if record_path is not None:
        llm = RecordingLLM(llm, record_path)
    return llm
