import shutil
import pytest
from CogSystem.errors import (
    ConfigError,
    MissingBindingError,
    TemplateIntegrityError,
    UnknownTemplateError,
)
from CogSystem.prompts import (
    DEFAULT_TEMPLATE_DIR,
    TEMPLATE_DIGESTS,
    PromptTemplate,
    TemplateId,
    TemplateRegistry,
    render,
    verify_templates,
)
from CogSystem.utils import digest, read_prompts


def test_shipped_templates_verify():
    verify_templates(DEFAULT_TEMPLATE_DIR)
    for template_id, expected in TEMPLATE_DIGESTS.items():
        with open(f"{DEFAULT_TEMPLATE_DIR}/{template_id.value}.txt", encoding="utf-8", newline="") as f:
            assert digest(f.read()) == expected


@pytest.mark.parametrize("template_id", list(TemplateId))
def test_any_mutation_fails_the_check(tmp_path, template_id):
    target = tmp_path / "templates"
    shutil.copytree(DEFAULT_TEMPLATE_DIR, target)
    path = target / f"{template_id.value}.txt"
    path.write_text(path.read_text(encoding="utf-8") + " ", encoding="utf-8")
    with pytest.raises(TemplateIntegrityError, match=template_id.value):
        verify_templates(str(target))
    with pytest.raises(TemplateIntegrityError):
        TemplateRegistry(str(target))
    assert TemplateRegistry(str(target), verify=False).get(template_id).body.endswith(" ")


def test_missing_template_file(tmp_path):
    target = tmp_path / "templates"
    shutil.copytree(DEFAULT_TEMPLATE_DIR, target)
    (target / "interpret.txt").unlink()
    with pytest.raises(ConfigError):
        verify_templates(str(target))


def test_placeholders_of_each_template():
    registry = TemplateRegistry()
    assert registry.get(TemplateId.PROFILE_UPDATE).placeholders == ("profile", "memory")
    assert registry.get(TemplateId.KNOWLEDGE_DISTILL).placeholders == ("profile", "memory")
    assert registry.get(TemplateId.INTERPRET).placeholders == ("profile", "memory", "question")
    assert registry.get(TemplateId.QUESTIONNAIRE_DESIGN).placeholders == ("topic",)
    assert registry.get(TemplateId.PROFILE_CREATE).placeholders == ("character",)


def test_render_interpret():
    text = render(
        "interpret",
        {"profile": "Name: Ann", "memory": "- Trout are back.", "question": "Fishing is relaxing."},
    )
    assert "Name: Ann" in text
    assert "- Trout are back." in text
    assert "Fishing is relaxing." in text
    assert "1 is strongly disagree and 5 is strongly agree" in text
    assert "{" not in text


def test_render_keeps_json_skeleton():
    text = render("knowledge_distill", {"profile": "P", "memory": "M"})
    assert '"knowledge": "knowledge",' in text
    assert "{\n" in text


def test_render_is_single_pass():
    text = render("questionnaire_design", {"topic": "{character} and {topic}"})
    assert "{character} and {topic}" in text


def test_missing_binding_names_placeholder():
    with pytest.raises(MissingBindingError) as info:
        render("interpret", {"profile": "P", "question": "Q"})
    assert info.value.placeholder == "memory"


def test_unknown_template():
    with pytest.raises(UnknownTemplateError):
        render("summarize", {})


def test_template_without_placeholders_is_unchanged():
    body = "Plain text with {braces} and {\"json\": 1}."
    assert PromptTemplate("fixture", body).render({}) == body


def test_baseline_scaffolds_are_langchain_templates():
    from langchain.prompts import PromptTemplate as LangchainTemplate

    prompts = read_prompts("config/prompts/agent_prompt/reflexion.json")
    assert isinstance(prompts["reflect_prompt"], LangchainTemplate)
    assert set(prompts["answer_prompt"].input_variables) == {
        "reflection",
        "profile",
        "information",
        "question",
    }
