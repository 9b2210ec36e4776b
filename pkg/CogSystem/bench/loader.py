import os
import json
import shutil
from typing import Any, Optional
from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError
from CogSystem.bench.profile import ProfileDoc
from CogSystem.bench.schema import (
    BenchmarkSet,
    InfoItem,
    Modality,
    Question,
    Questionnaire,
    Variant,
)
from CogSystem.errors import BenchmarkNotFoundError, BenchmarkSchemaError
from CogSystem.utils import dumps_json, natural_key, word_count, write_text_atomic


class _BenchFile(BaseModel):
    name: str
    variant: Variant


class _QuestionEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    statement: str


class _QuestionnaireFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    topic_id: str
    questions: list[_QuestionEntry]


class _FlowFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    category: str
    modality: Modality
    text: str
    word_count: Optional[int] = None


def _pointer(loc: tuple) -> str:
    return "/" + "/".join(str(part) for part in loc) if loc else ""


def _schema_error(exc: ValidationError, file: str) -> BenchmarkSchemaError:
    first = exc.errors()[0]
    return BenchmarkSchemaError(first["msg"], file=file, pointer=_pointer(first["loc"]))


def _read(file: str) -> Any:
    if not os.path.isfile(file):
        raise BenchmarkNotFoundError(f"Missing benchmark file: {file}")
    try:
        with open(file, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise BenchmarkSchemaError(f"invalid JSON: {e.msg}", file=file) from e


def _json_files(directory: str) -> list[str]:
    if not os.path.isdir(directory):
        return []
    names = [n for n in os.listdir(directory) if n.endswith(".json")]
    return [os.path.join(directory, n) for n in sorted(names, key=natural_key)]


def _load_questionnaire(file: str) -> Questionnaire:
    raw = _read(file)
    try:
        parsed = _QuestionnaireFile.model_validate(raw)
    except ValidationError as e:
        raise _schema_error(e, file) from e
    stem = os.path.splitext(os.path.basename(file))[0]
    if parsed.topic_id != stem:
        raise BenchmarkSchemaError(
            f"topic_id {parsed.topic_id!r} does not match file name {stem!r}",
            file=file,
            pointer="/topic_id",
        )
    try:
        return Questionnaire(
            topic_id=parsed.topic_id,
            questions=[
                Question(id=q.id, topic_id=parsed.topic_id, statement=q.statement)
                for q in parsed.questions
            ],
        )
    except ValidationError as e:
        raise _schema_error(e, file) from e


def _load_profile(file: str) -> ProfileDoc:
    raw = _read(file)
    if not isinstance(raw, dict):
        raise BenchmarkSchemaError("profile must be a JSON object", file=file)
    for key, value in raw.items():
        if not isinstance(value, str):
            raise BenchmarkSchemaError(
                "attribute values must be strings", file=file, pointer=f"/{key}"
            )
    profile = ProfileDoc.from_mapping(raw)
    if profile.missing_keys:
        logger.debug(f"{file}: missing canonical keys {list(profile.missing_keys)}")
    return profile


def _load_flows(directory: str, topic_id: str) -> list[InfoItem]:
    items: list[InfoItem] = []
    seen: set[str] = set()
    for file in _json_files(directory):
        raw = _read(file)
        try:
            parsed = _FlowFile.model_validate(raw)
        except ValidationError as e:
            raise _schema_error(e, file) from e
        if parsed.id in seen:
            raise BenchmarkSchemaError(
                f"duplicate flow id {parsed.id!r}", file=file, pointer="/id"
            )
        seen.add(parsed.id)
        count = parsed.word_count if parsed.word_count is not None else word_count(parsed.text)
        try:
            items.append(
                InfoItem(
                    id=parsed.id,
                    topic_id=topic_id,
                    category=parsed.category,
                    modality=parsed.modality,
                    text=parsed.text,
                    word_count=count,
                )
            )
        except ValidationError as e:
            raise _schema_error(e, file) from e
    return items


def load_benchmark(path: str) -> BenchmarkSet:
    """Load a benchmark root directory.

    Layout: `bench.json`, `questionnaires/<topic>.json`, `profiles/<name>.json` and
    `flows/<topic>/<seq>.json`. Flow files are read in natural file-name order, which is the corpus order.

    Args:
        `path` (`str`): The benchmark root.
    Raises:
        `BenchmarkNotFoundError`: The root or `bench.json` is missing.
        `BenchmarkSchemaError`: A file violates the schema or repeats an id; the error carries a JSON pointer.
    Returns:
        `BenchmarkSet`: The materialized benchmark.
    """
    if not os.path.isdir(path):
        raise BenchmarkNotFoundError(f"Benchmark root not found: {path}")
    bench_file = os.path.join(path, "bench.json")
    try:
        header = _BenchFile.model_validate(_read(bench_file))
    except ValidationError as e:
        raise _schema_error(e, bench_file) from e

    questionnaires = [
        _load_questionnaire(file)
        for file in _json_files(os.path.join(path, "questionnaires"))
    ]
    profiles = {
        os.path.splitext(os.path.basename(file))[0]: _load_profile(file)
        for file in _json_files(os.path.join(path, "profiles"))
    }
    flows: dict[str, list[InfoItem]] = {}
    flows_root = os.path.join(path, "flows")
    if os.path.isdir(flows_root):
        for topic_id in sorted(os.listdir(flows_root), key=natural_key):
            topic_dir = os.path.join(flows_root, topic_id)
            if os.path.isdir(topic_dir):
                flows[topic_id] = _load_flows(topic_dir, topic_id)

    bench = BenchmarkSet(
        name=header.name,
        variant=header.variant,
        questionnaires=questionnaires,
        profiles=profiles,
        flows=flows,
    )
    logger.debug(
        f"Loaded benchmark {bench.name} ({bench.variant.value}): "
        f"{len(questionnaires)} questionnaires, {len(profiles)} profiles, "
        f"{sum(len(v) for v in flows.values())} flows"
    )
    return bench


def save_benchmark(bench: BenchmarkSet, path: str) -> None:
    """Write `bench` in the layout read by `load_benchmark`, replacing any questionnaires, profiles and flows
    already under `path`. Flow files are numbered `001.json`, `002.json`, ... in corpus order.

    Args:
        `bench` (`BenchmarkSet`): The benchmark to write.
        `path` (`str`): Destination root directory.
    """
    for part in ("questionnaires", "profiles", "flows"):
        shutil.rmtree(os.path.join(path, part), ignore_errors=True)
    write_text_atomic(
        os.path.join(path, "bench.json"),
        dumps_json({"name": bench.name, "variant": bench.variant.value}),
    )
    for questionnaire in bench.questionnaires:
        write_text_atomic(
            os.path.join(path, "questionnaires", f"{questionnaire.topic_id}.json"),
            dumps_json(
                {
                    "topic_id": questionnaire.topic_id,
                    "questions": [
                        {"id": q.id, "statement": q.statement}
                        for q in questionnaire.questions
                    ],
                }
            ),
        )
    for name, profile in bench.profiles.items():
        write_text_atomic(
            os.path.join(path, "profiles", f"{name}.json"), dumps_json(profile.to_record())
        )
    for topic_id, items in bench.flows.items():
        width = max(3, len(str(len(items))))
        for seq, item in enumerate(items, start=1):
            write_text_atomic(
                os.path.join(path, "flows", topic_id, f"{seq:0{width}d}.json"),
                dumps_json(
                    {
                        "id": item.id,
                        "category": item.category,
                        "modality": item.modality.value,
                        "text": item.text,
                        "word_count": item.word_count,
                    }
                ),
            )
