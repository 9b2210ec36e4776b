import os
import re
import json
from typing import Any, Optional
from loguru import logger
from pydantic import BaseModel, Field, ValidationError
from CogSystem.bench import Question, Questionnaire
from CogSystem.errors import ReviewSheetError
from CogSystem.prompts import OpinionSet
from CogSystem.utils import dumps_json, write_text_atomic

REVIEW_FLAGS = ("relevance", "distinctiveness", "clarity", "contextual_truth")

REVIEW_GUIDELINES = {
    "relevance": "The opinion is directly about the topic.",
    "distinctiveness": "The opinion does not repeat another entry of the sheet.",
    "clarity": "The opinion is unambiguous; rewrite it in revised_opinion otherwise.",
    "contextual_truth": "The opinion is plausible for the topic; replace it otherwise.",
}


class ReviewEntry(BaseModel):
    number: int
    perspective: str
    opinion: str
    supporters: list[str] = Field(default_factory=list)
    reasons: str = ""
    revised_opinion: Optional[str] = None
    relevance: Optional[bool] = None
    distinctiveness: Optional[bool] = None
    clarity: Optional[bool] = None
    contextual_truth: Optional[bool] = None

    @property
    def accepted(self) -> bool:
        return all(getattr(self, flag) is True for flag in REVIEW_FLAGS)

    @property
    def statement(self) -> str:
        if self.revised_opinion and self.revised_opinion.strip():
            return self.revised_opinion.strip()
        return self.opinion


class ReviewSheet(BaseModel):
    """An opinion set laid out for human review. Every flag starts unset (`null`)."""

    topic_id: str = Field(min_length=1)
    topic: str = ""
    guidelines: dict[str, str] = Field(default_factory=lambda: dict(REVIEW_GUIDELINES))
    entries: list[ReviewEntry] = Field(default_factory=list)


def topic_slug(topic: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", topic.lower()).strip("-")


def export_review_sheet(
    opinions: OpinionSet, path: str, topic_id: Optional[str] = None
) -> ReviewSheet:
    """Write a review sheet for `opinions` to `path`.

    Args:
        `opinions` (`OpinionSet`): The generated opinions.
        `path` (`str`): Output JSON path.
        `topic_id` (`Optional[str]`): Questionnaire id of the topic. Defaults to a slug of the topic name.
    Raises:
        `ReviewSheetError`: No topic id can be derived.
    Returns:
        `ReviewSheet`: The sheet as written.
    """
    topic_id = topic_id or topic_slug(opinions.topic)
    if not topic_id:
        raise ReviewSheetError("A topic id is required for an opinion set without a topic")
    sheet = ReviewSheet(
        topic_id=topic_id,
        topic=opinions.topic,
        entries=[
            ReviewEntry(
                number=entry.number,
                perspective=entry.perspective,
                opinion=entry.opinion,
                supporters=list(entry.supporters),
                reasons=entry.reasons,
            )
            for entry in opinions.entries
        ],
    )
    write_text_atomic(path, dumps_json(sheet.model_dump(mode="json")))
    logger.info(f"Wrote review sheet with {len(sheet.entries)} rows to {path}")
    return sheet


def _check_row(row: Any, index: int) -> None:
    if not isinstance(row, dict):
        raise ReviewSheetError(f"Row {index}: expected an object")
    for flag in REVIEW_FLAGS:
        value = row.get(flag)
        if value is not None and not isinstance(value, bool):
            raise ReviewSheetError(
                f"Row {index} (number {row.get('number')}): flag {flag!r} must be true, false or null, got {value!r}"
            )


def read_review_sheet(path: str) -> ReviewSheet:
    """Read a (possibly completed) review sheet.

    Raises:
        `ReviewSheetError`: The file is missing, not JSON, or a row is malformed. Row errors name the row.
    """
    if not os.path.isfile(path):
        raise ReviewSheetError(f"Review sheet not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ReviewSheetError(f"{path}: invalid JSON: {e.msg}") from e
    if not isinstance(raw, dict) or not isinstance(raw.get("entries"), list):
        raise ReviewSheetError(f"{path}: expected an object with an 'entries' list")
    for index, row in enumerate(raw["entries"]):
        _check_row(row, index)
    try:
        return ReviewSheet.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = "/".join(str(part) for part in first["loc"])
        raise ReviewSheetError(f"{path}: {where}: {first['msg']}") from e


def import_review_sheet(path: str) -> Questionnaire:
    """Turn a completed review sheet into a questionnaire of the accepted opinions.

    An entry is accepted when all four flags are `true`. The statement is `revised_opinion` when given, the
    original opinion otherwise. Question ids are `<topic_id>-qNN` by opinion number.

    Raises:
        `ReviewSheetError`: The sheet is malformed, accepts no entry, or accepts a row that makes no valid question.
            Row errors name the row.
    """
    sheet = read_review_sheet(path)
    accepted = [(index, entry) for index, entry in enumerate(sheet.entries) if entry.accepted]
    logger.info(f"{path}: {len(accepted)}/{len(sheet.entries)} opinions accepted")
    if not accepted:
        raise ReviewSheetError(f"{path}: no entry was accepted")
    first_row: dict[int, int] = {}
    questions = []
    for index, entry in accepted:
        if entry.number in first_row:
            raise ReviewSheetError(
                f"{path}: Row {index} (number {entry.number}): number already accepted at row {first_row[entry.number]}"
            )
        first_row[entry.number] = index
        try:
            questions.append(
                Question(
                    id=f"{sheet.topic_id}-q{entry.number:02d}",
                    topic_id=sheet.topic_id,
                    statement=entry.statement,
                )
            )
        except ValidationError as e:
            raise ReviewSheetError(
                f"{path}: Row {index} (number {entry.number}): {e.errors()[0]['msg']}"
            ) from e
    try:
        return Questionnaire(topic_id=sheet.topic_id, questions=questions)
    except ValidationError as e:
        raise ReviewSheetError(f"{path}: {e.errors()[0]['msg']}") from e


def questionnaire_record(questionnaire: Questionnaire) -> dict:
    """The `questionnaires/<topic>.json` form of a questionnaire."""
    return {
        "topic_id": questionnaire.topic_id,
        "questions": [{"id": q.id, "statement": q.statement} for q in questionnaire.questions],
    }
