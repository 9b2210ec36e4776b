# Description: Parsers for the structured replies each template asks for.
# Every failure surfaces as a `ParseError` subclass.

import re
import json
from typing import Any, Optional
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator
from CogSystem.bench import CANONICAL_KEYS, ProfileDoc, canonical_key
from CogSystem.errors import (
    InterpretationParseError,
    KnowledgeParseError,
    OpinionParseError,
    ProfileParseError,
)

PROFILE_VALUE_LIMIT = 30
_DECORATION = r"[ \t>*#_\-]*"
_BULLET = re.compile(r"^[\s>*#\-•]*(?:\d+[.)]\s+)?")
_INTEGER = re.compile(r"(?<![\d.])\d+(?![\d])")
_decoder = json.JSONDecoder()


def _header(*names: str) -> re.Pattern:
    """Line-start header such as `Rating:`, tolerating markdown decoration and any casing."""
    alternatives = "|".join(r"\s+".join(map(re.escape, name.split())) for name in names)
    return re.compile(
        rf"^{_DECORATION}(?:\d+[.)]\s*)?({alternatives})[ \t*_]*:[ \t*_]*",
        re.IGNORECASE | re.MULTILINE,
    )


_ASSESSMENTS = _header("Assessments")
_THOUGHTS = _header("Thoughts")
_UPDATED_PROFILE = _header("Updated Profile")
_RATING = _header("Rating")
_RATING_INLINE = re.compile(r"rating[ \t*_]*:[ \t*_]*", re.IGNORECASE)
_OPINION_FIELDS = ("Number", "Perspective", "Opinion", "Supporters", "Reasons")
_OPINION_HEADER = _header(*_OPINION_FIELDS)


class ParsedProfileUpdate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    assessments: str
    thoughts: str
    updated_profile: ProfileDoc


class KnowledgeDraft(BaseModel):
    model_config = ConfigDict(frozen=True)

    thoughts: str = ""
    knowledge: str = Field(min_length=1)
    score: int = Field(ge=1, le=5)


class ParsedInterpretation(BaseModel):
    model_config = ConfigDict(frozen=True)

    thoughts: str
    rating: int = Field(ge=1, le=5)


class OpinionEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    number: int
    perspective: str
    opinion: str
    supporters: list[str] = Field(min_length=1)
    reasons: str


class OpinionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    topic: str = ""
    entries: list[OpinionEntry] = Field(default_factory=list)

    @field_validator("entries")
    @classmethod
    def _unique_numbers(cls, entries: list[OpinionEntry]) -> list[OpinionEntry]:
        numbers = [entry.number for entry in entries]
        if len(numbers) != len(set(numbers)):
            raise ValueError("opinion numbers must be unique")
        return entries


def parse_profile_text(text: str, value_limit: Optional[int] = None) -> ProfileDoc:
    """Parse a block of `Key: value` lines into a profile.

    Bullets and markdown emphasis are stripped. A line that is not a `Key: value` pair continues the value
    of the previous key. Canonical keys match regardless of case and spacing; other keys become extras.

    Args:
        `text` (`str`): The profile block.
        `value_limit` (`Optional[int]`): Warn about values longer than this many characters. Defaults to `None`.
    Raises:
        `ProfileParseError`: No canonical key was recovered.
    Returns:
        `ProfileDoc`: The profile; absent canonical keys are listed in `missing_keys`.
    """
    attributes: dict[str, str] = {}
    extras: dict[str, str] = {}
    current: Optional[tuple[dict[str, str], str]] = None
    for raw in text.splitlines():
        line = _BULLET.sub("", raw).strip()
        if not line or line.startswith("```"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip(" *_`")
        value = value.strip(" *_`")
        canonical = canonical_key(key) if sep else None
        if canonical is not None:
            attributes[canonical] = value
            current = (attributes, canonical)
        elif sep and key and len(key) <= 40 and not key.endswith((".", "!", "?")):
            logger.warning(f"Unknown profile key {key!r} kept as an extra")
            extras[key] = value
            current = (extras, key)
        elif current is not None:
            target, name = current
            target[name] = f"{target[name]} {line}".strip()
    if not attributes:
        raise ProfileParseError("No profile attribute could be recovered")
    if value_limit is not None:
        for key, value in attributes.items():
            if len(value) > value_limit:
                logger.warning(f"Profile value of {key!r} exceeds {value_limit} characters")
    missing = [key for key in CANONICAL_KEYS if key not in attributes]
    return ProfileDoc(attributes, extras, missing)


def parse_profile_update(text: str) -> ParsedProfileUpdate:
    """Split a profile-update reply into its `Assessments`, `Thoughts` and `Updated Profile` sections.

    Raises:
        `ProfileParseError`: A section header is missing, or the profile has no canonical key.
    """
    assessments = _ASSESSMENTS.search(text)
    if assessments is None:
        raise ProfileParseError("Missing 'Assessments:' section")
    thoughts = _THOUGHTS.search(text, assessments.end())
    if thoughts is None:
        raise ProfileParseError("Missing 'Thoughts:' section")
    profile = _UPDATED_PROFILE.search(text, thoughts.end())
    if profile is None:
        raise ProfileParseError("Missing 'Updated Profile:' section")
    return ParsedProfileUpdate(
        assessments=text[assessments.end() : thoughts.start()].strip(),
        thoughts=text[thoughts.end() : profile.start()].strip(),
        updated_profile=parse_profile_text(text[profile.end() :], PROFILE_VALUE_LIMIT),
    )


def _first_json_array(text: str) -> list:
    start = text.find("[")
    while start != -1:
        try:
            value, _ = _decoder.raw_decode(text, start)
        except (json.JSONDecodeError, RecursionError):
            value = None
        if isinstance(value, list):
            return value
        start = text.find("[", start + 1)
    raise KnowledgeParseError("No JSON array found in reply")


def _as_score(value: Any) -> Optional[int]:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str) and value.strip().isdigit():
        return int(value.strip())
    return None


def _knowledge_draft(element: Any, index: int) -> KnowledgeDraft:
    if not isinstance(element, dict):
        raise KnowledgeParseError("element is not an object", index)
    for key in ("thoughts", "knowledge", "score"):
        if key not in element:
            raise KnowledgeParseError(f"missing key {key!r}", index)
    score = _as_score(element["score"])
    if score is None:
        raise KnowledgeParseError(f"score {element['score']!r} is not an integer", index)
    if not 1 <= score <= 5:
        raise KnowledgeParseError(f"score {score} outside 1-5", index)
    knowledge = element["knowledge"]
    if not isinstance(knowledge, str) or not knowledge.strip():
        raise KnowledgeParseError("knowledge must be a non-empty string", index)
    thoughts = element["thoughts"]
    return KnowledgeDraft(
        thoughts="" if thoughts is None else str(thoughts),
        knowledge=knowledge.strip(),
        score=score,
    )


def parse_knowledge_list(text: str, skip_invalid: bool = False) -> list[KnowledgeDraft]:
    """Decode the first JSON array in a distillation reply, ignoring code fences and surrounding prose.

    Args:
        `text` (`str`): The reply.
        `skip_invalid` (`bool`, optional): Drop invalid elements with a warning instead of failing. Defaults to `False`.
    Raises:
        `KnowledgeParseError`: No array was found, or an element is invalid (carries the element index).
    Returns:
        `list[KnowledgeDraft]`: The drafts in reply order.
    """
    drafts = []
    for index, element in enumerate(_first_json_array(text)):
        try:
            drafts.append(_knowledge_draft(element, index))
        except KnowledgeParseError as e:
            if not skip_invalid:
                raise
            logger.warning(f"Skipping knowledge {e}")
    return drafts


def _rating_value(text: str) -> Optional[int]:
    lines = text.splitlines() or [""]
    candidates = [lines[0]]
    if not lines[0].strip():
        candidates = [next((line for line in lines[1:] if line.strip()), "")]
    for match in _INTEGER.finditer(candidates[0]):
        value = int(match.group(0))
        if 1 <= value <= 5:
            return value
    return None


def parse_interpretation(text: str) -> ParsedInterpretation:
    """Read the `Thoughts` and `Rating` of an interpretation reply.

    The rating is the first integer between 1 and 5 on the rating line, so `4/5` and `4 points` read as 4.
    Without a `Thoughts:` header, everything before the rating is the reasoning.

    Raises:
        `InterpretationParseError`: No `Rating:` found, or no integer 1-5 follows it.
    """
    rating = _RATING.search(text) or _RATING_INLINE.search(text)
    if rating is None:
        raise InterpretationParseError("Missing 'Rating:'")
    value = _rating_value(text[rating.end() :])
    if value is None:
        raise InterpretationParseError("No rating between 1 and 5 after 'Rating:'")
    thoughts = _THOUGHTS.search(text)
    if thoughts is None:
        reasoning = text[: rating.start()]
    elif thoughts.start() < rating.start():
        reasoning = text[thoughts.end() : rating.start()]
    else:
        reasoning = text[thoughts.end() :]
    return ParsedInterpretation(thoughts=reasoning.strip(), rating=value)


def _opinion_entry(fields: dict[str, str]) -> Optional[OpinionEntry]:
    if any(not fields.get(name.lower()) for name in _OPINION_FIELDS):
        return None
    number = _INTEGER.search(fields["number"])
    supporters = [s.strip() for s in fields["supporters"].split(",") if s.strip()]
    if number is None or not supporters:
        return None
    return OpinionEntry(
        number=int(number.group(0)),
        perspective=fields["perspective"],
        opinion=fields["opinion"],
        supporters=supporters,
        reasons=fields["reasons"],
    )


def parse_opinion_set(text: str, topic: str = "") -> OpinionSet:
    """Parse repeated `Number / Perspective / Opinion / Supporters / Reasons` blocks.

    Incomplete blocks and repeated numbers are skipped with a warning.

    Raises:
        `OpinionParseError`: No complete block was found.
    """
    headers = list(_OPINION_HEADER.finditer(text))
    blocks: list[dict[str, str]] = []
    for i, match in enumerate(headers):
        name = match.group(1).lower()
        end = headers[i + 1].start() if i + 1 < len(headers) else len(text)
        value = " ".join(text[match.end() : end].split())
        if name == "number":
            blocks.append({})
        if blocks and name not in blocks[-1]:
            blocks[-1][name] = value
    entries: list[OpinionEntry] = []
    seen: set[int] = set()
    for position, fields in enumerate(blocks, start=1):
        entry = _opinion_entry(fields)
        if entry is None:
            logger.warning(f"Skipping incomplete opinion block {position}")
            continue
        if entry.number in seen:
            logger.warning(f"Skipping repeated opinion number {entry.number}")
            continue
        seen.add(entry.number)
        entries.append(entry)
    if not entries:
        raise OpinionParseError("No complete opinion block found")
    return OpinionSet(topic=topic, entries=entries)


_REFLECTION = _header("Reflection")


def parse_reflection(text: str) -> str:
    """Read a self-reflection reply: the text after `Reflection:`, or the whole reply without that header.

    Raises:
        `InterpretationParseError`: The reflection is empty.
    """
    header = _REFLECTION.search(text)
    reflection = (text[header.end() :] if header else text).strip()
    if not reflection:
        raise InterpretationParseError("Empty self-reflection")
    return reflection
