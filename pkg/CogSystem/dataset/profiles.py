from typing import Optional
from loguru import logger
from CogSystem.bench import CANONICAL_KEYS, ProfileDoc
from CogSystem.errors import ProfileGenerationError, ProfileParseError
from CogSystem.llms import BaseLLM, PromptRequest
from CogSystem.prompts import (
    PROFILE_VALUE_LIMIT,
    TemplateId,
    TemplateRegistry,
    default_registry,
    parse_profile_text,
)

# Generated profiles recovering fewer canonical keys are rejected.
MIN_PROFILE_KEYS = 10


def generate_profile(
    character: str, llm: BaseLLM, registry: Optional[TemplateRegistry] = None
) -> ProfileDoc:
    """Have the provider write a profile for `character`.

    Args:
        `character` (`str`): A short character description, e.g. a top-ranked supporter.
        `llm` (`BaseLLM`): The provider.
        `registry` (`Optional[TemplateRegistry]`): Template source. Defaults to the shipped templates.
    Raises:
        `ProviderError`: The completion failed.
        `ProfileGenerationError`: Fewer than `MIN_PROFILE_KEYS` canonical keys were recovered.
    Returns:
        `ProfileDoc`: The profile. Missing canonical keys are empty and warned about.
    """
    registry = registry or default_registry()
    text = registry.render(TemplateId.PROFILE_CREATE, {"character": character})
    reply = llm.complete(
        PromptRequest(
            template_id=TemplateId.PROFILE_CREATE.value, text=text, tag={"character": character}
        )
    ).text
    try:
        profile = parse_profile_text(reply, value_limit=PROFILE_VALUE_LIMIT)
    except ProfileParseError as e:
        raise ProfileGenerationError(f"No profile for {character!r}: {e}") from e
    recovered = len(CANONICAL_KEYS) - len(profile.missing_keys)
    if recovered < MIN_PROFILE_KEYS:
        raise ProfileGenerationError(
            f"Profile for {character!r} has only {recovered}/{len(CANONICAL_KEYS)} attributes"
        )
    if profile.missing_keys:
        logger.warning(
            f"Profile for {character!r} is missing {list(profile.missing_keys)}"
        )
    return profile
