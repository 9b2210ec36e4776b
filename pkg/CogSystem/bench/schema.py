from enum import Enum
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator
from CogSystem.bench.profile import ProfileDoc


class Variant(str, Enum):
    ARTICLE = "a"
    VIDEO = "v"


class Modality(str, Enum):
    ARTICLE = "article"
    VIDEO_TEXT = "video_text"


VARIANT_MODALITY = {Variant.ARTICLE: Modality.ARTICLE, Variant.VIDEO: Modality.VIDEO_TEXT}
# Items perceived per iteration and items per topic in the canonical layout.
BATCH_SIZE = {Variant.ARTICLE: 1, Variant.VIDEO: 10}
FLOWS_PER_TOPIC = {Variant.ARTICLE: 10, Variant.VIDEO: 100}
CANONICAL_ITERATIONS = 10
CANONICAL_QUESTIONS = 10


class Question(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    topic_id: str
    statement: str

    @field_validator("statement")
    @classmethod
    def _statement_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("statement must be non-empty")
        return value


class Questionnaire(BaseModel):
    model_config = ConfigDict(frozen=True)

    topic_id: str = Field(min_length=1)
    questions: list[Question] = Field(min_length=1)

    @field_validator("questions")
    @classmethod
    def _unique_ids(cls, questions: list[Question]) -> list[Question]:
        seen: set[str] = set()
        for question in questions:
            if question.id in seen:
                raise ValueError(f"duplicate question id {question.id!r}")
            seen.add(question.id)
        return questions

    @property
    def m(self) -> int:
        return len(self.questions)


class InfoItem(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    topic_id: str
    category: str
    modality: Modality
    text: str
    word_count: int = Field(ge=0)


class BenchmarkSet(BaseModel):
    """A fully materialized benchmark. Profiles are keyed by their file name; flows keep corpus order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    variant: Variant
    questionnaires: list[Questionnaire] = Field(default_factory=list)
    profiles: dict[str, ProfileDoc] = Field(default_factory=dict)
    flows: dict[str, list[InfoItem]] = Field(default_factory=dict)

    def questionnaire(self, topic_id: str) -> Questionnaire:
        for questionnaire in self.questionnaires:
            if questionnaire.topic_id == topic_id:
                return questionnaire
        raise KeyError(f"No questionnaire for topic {topic_id!r}")

    def profile(self, name: str) -> ProfileDoc:
        if name not in self.profiles:
            raise KeyError(f"No profile named {name!r}")
        return self.profiles[name]

    def items(self, topic_id: str, ids: list[str]) -> list[InfoItem]:
        """Look up flow items of a topic by id, in the order given."""
        by_id = {item.id: item for item in self.flows.get(topic_id, [])}
        return [by_id[item_id] for item_id in ids]

    @property
    def topics(self) -> list[str]:
        seen = [q.topic_id for q in self.questionnaires]
        return seen + [t for t in self.flows if t not in seen]


class IterationPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    topic_id: str
    iterations: list[list[str]]

    @property
    def T(self) -> int:
        return len(self.iterations)


class StatsTable(BaseModel):
    """Mean word counts per category plus the grand mean (`None` when there are no items)."""

    categories: dict[str, float] = Field(default_factory=dict)
    counts: dict[str, int] = Field(default_factory=dict)
    overall: Optional[float] = None


class Violation(BaseModel):
    code: str
    location: str
    message: str


class ValidationReport(BaseModel):
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations
