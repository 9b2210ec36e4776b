import os
from typing import Optional
from loguru import logger
from pydantic import ValidationError
from CogSystem.bench import topics_of
from CogSystem.errors import ConfigError
from CogSystem.llms import BaseLLM, PromptRequest
from CogSystem.prompts import (
    OpinionSet,
    TemplateId,
    TemplateRegistry,
    default_registry,
    parse_opinion_set,
)
from CogSystem.utils import dumps_json, read_json, write_text_atomic

EXPECTED_OPINIONS = 10


def generate_opinion_set(
    topic: str, llm: BaseLLM, registry: Optional[TemplateRegistry] = None
) -> OpinionSet:
    """Ask the provider for distinct opinions on `topic` and their conceivable supporters.

    Args:
        `topic` (`str`): The topic, e.g. `Fishing`.
        `llm` (`BaseLLM`): The provider.
        `registry` (`Optional[TemplateRegistry]`): Template source. Defaults to the shipped templates.
    Raises:
        `ProviderError`: The completion failed.
        `OpinionParseError`: The reply holds no complete opinion block.
    Returns:
        `OpinionSet`: The parsed opinions. A count other than 10 is only warned about.
    """
    registry = registry or default_registry()
    text = registry.render(TemplateId.QUESTIONNAIRE_DESIGN, {"topic": topic})
    reply = llm.complete(
        PromptRequest(template_id=TemplateId.QUESTIONNAIRE_DESIGN.value, text=text, tag={"topic": topic})
    ).text
    opinions = parse_opinion_set(reply, topic=topic)
    if len(opinions.entries) != EXPECTED_OPINIONS:
        logger.warning(
            f"Expected {EXPECTED_OPINIONS} opinions on {topic!r}, got {len(opinions.entries)}"
        )
    logger.info(f"Generated {len(opinions.entries)} opinions on {topic!r}")
    return opinions


def generate_category(
    category: str, llm: BaseLLM, registry: Optional[TemplateRegistry] = None
) -> dict[str, OpinionSet]:
    """Generate opinion sets for every topic of a catalog category, in catalog order.

    Raises:
        `ConfigError`: `category` is not in the catalog.
    """
    try:
        topics = topics_of(category)
    except KeyError as e:
        raise ConfigError(str(e.args[0])) from e
    return {topic: generate_opinion_set(topic, llm, registry) for topic in topics}


def save_opinion_set(opinions: OpinionSet, path: str) -> None:
    write_text_atomic(path, dumps_json(opinions.model_dump(mode="json")))


def load_opinion_set(path: str) -> OpinionSet:
    if not os.path.isfile(path):
        raise ConfigError(f"Opinion file not found: {path}")
    try:
        return OpinionSet.model_validate(read_json(path))
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid opinion file {path}: {e}") from e
