# Description: The five fixed prompt templates, rendered with single-brace placeholders.

import os
import re
from enum import Enum
from typing import Mapping, Optional
from loguru import logger
from CogSystem.errors import (
    ConfigError,
    MissingBindingError,
    TemplateIntegrityError,
    UnknownTemplateError,
)
from CogSystem.utils import digest

DEFAULT_TEMPLATE_DIR = os.path.join("config", "prompts", "templates")
PLACEHOLDERS = frozenset({"profile", "memory", "question", "topic", "character"})
_PLACEHOLDER = re.compile(r"\{([A-Za-z_]+)\}")


class TemplateId(str, Enum):
    PROFILE_UPDATE = "profile_update"
    KNOWLEDGE_DISTILL = "knowledge_distill"
    INTERPRET = "interpret"
    QUESTIONNAIRE_DESIGN = "questionnaire_design"
    PROFILE_CREATE = "profile_create"


# SHA-256 of the shipped template files.
TEMPLATE_DIGESTS: dict[TemplateId, str] = {
    TemplateId.PROFILE_UPDATE: "4ab967ddfdc0dc53f57444b346850fcded63831de92cd5d4d58b792186972403",
    TemplateId.KNOWLEDGE_DISTILL: "c7bc71163b78d0e053de2cbc42738dcf98a0158e5a9991bbf4b0f3bf8c5178c1",
    TemplateId.INTERPRET: "f03265465f029cc10de6a3539a47749fd938aeadfc9c5869b8832d742105741f",
    TemplateId.QUESTIONNAIRE_DESIGN: "f7c0d700e5aa5aa22b7322e83024b709efff665c85dd45fd506abf0d0e30127f",
    TemplateId.PROFILE_CREATE: "0230d0cf61e8f1b407061667a8af046618abb691bfc1d48d2a2c84a0bec287df",
}


class PromptTemplate:
    """A template body with `{name}` placeholders drawn from a fixed set of five names.

    Anything else in braces (the JSON skeleton of the distillation prompt, for instance) is literal text.
    """

    def __init__(self, template_id: str, body: str) -> None:
        self.template_id = template_id
        self.body = body
        self.placeholders: tuple[str, ...] = tuple(
            dict.fromkeys(
                name for name in _PLACEHOLDER.findall(body) if name in PLACEHOLDERS
            )
        )

    def render(self, bindings: Mapping[str, str]) -> str:
        """Replace every placeholder occurrence with its binding in a single pass.

        Args:
            `bindings` (`Mapping[str, str]`): Placeholder name to text. Extra names are ignored.
        Raises:
            `MissingBindingError`: A placeholder of the template has no binding.
        Returns:
            `str`: The rendered prompt.
        """
        for name in self.placeholders:
            if name not in bindings:
                raise MissingBindingError(name, self.template_id)

        def substitute(match: re.Match) -> str:
            name = match.group(1)
            if name not in PLACEHOLDERS:
                return match.group(0)
            return str(bindings[name])

        return _PLACEHOLDER.sub(substitute, self.body)

    def __repr__(self) -> str:
        return f"PromptTemplate({self.template_id!r}, placeholders={list(self.placeholders)})"


def _template_path(template_dir: str, template_id: TemplateId) -> str:
    return os.path.join(template_dir, f"{template_id.value}.txt")


def _read_body(path: str) -> str:
    if not os.path.isfile(path):
        raise ConfigError(f"Template file not found: {path}")
    with open(path, "r", encoding="utf-8", newline="") as f:
        return f.read()


def verify_templates(template_dir: str = DEFAULT_TEMPLATE_DIR) -> None:
    """Recompute the SHA-256 of every shipped template and compare it against the embedded digest.

    Raises:
        `ConfigError`: A template file is missing.
        `TemplateIntegrityError`: A template file differs from the shipped text.
    """
    drifted = []
    for template_id, expected in TEMPLATE_DIGESTS.items():
        actual = digest(_read_body(_template_path(template_dir, template_id)))
        if actual != expected:
            drifted.append(template_id.value)
    if drifted:
        raise TemplateIntegrityError(
            f"Template files differ from the shipped text: {', '.join(drifted)}"
        )
    logger.debug(f"Verified {len(TEMPLATE_DIGESTS)} templates in {template_dir}")


class TemplateRegistry:
    """Loads the five templates from `template_dir`, optionally checking their digests first."""

    def __init__(self, template_dir: str = DEFAULT_TEMPLATE_DIR, verify: bool = True) -> None:
        if verify:
            verify_templates(template_dir)
        self.template_dir = template_dir
        self.templates: dict[str, PromptTemplate] = {
            template_id.value: PromptTemplate(
                template_id.value, _read_body(_template_path(template_dir, template_id))
            )
            for template_id in TemplateId
        }

    def get(self, template_id: str) -> PromptTemplate:
        key = template_id.value if isinstance(template_id, TemplateId) else template_id
        if key not in self.templates:
            raise UnknownTemplateError(f"Unknown template id {key!r}")
        return self.templates[key]

    def render(self, template_id: str, bindings: Mapping[str, str]) -> str:
        return self.get(template_id).render(bindings)


_default: Optional[TemplateRegistry] = None


def default_registry() -> TemplateRegistry:
    global _default
    if _default is None:
        _default = TemplateRegistry()
    return _default


def render(
    template_id: str,
    bindings: Mapping[str, str],
    registry: Optional[TemplateRegistry] = None,
) -> str:
    """Render one of the five templates.

    Raises:
        `UnknownTemplateError`: `template_id` names no template.
        `MissingBindingError`: A placeholder is left unbound.
    """
    return (registry or default_registry()).render(template_id, bindings)
