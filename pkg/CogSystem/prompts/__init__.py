from CogSystem.prompts.templates import (
    DEFAULT_TEMPLATE_DIR,
    PLACEHOLDERS,
    TEMPLATE_DIGESTS,
    PromptTemplate,
    TemplateId,
    TemplateRegistry,
    default_registry,
    render,
    verify_templates,
)
from CogSystem.prompts.parsers import (
    PROFILE_VALUE_LIMIT,
    KnowledgeDraft,
    OpinionEntry,
    OpinionSet,
    ParsedInterpretation,
    ParsedProfileUpdate,
    parse_interpretation,
    parse_knowledge_list,
    parse_opinion_set,
    parse_profile_text,
    parse_profile_update,
    parse_reflection,
)
