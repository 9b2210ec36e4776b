import os
import pytest
from pathlib import Path
from CogSystem.evaluation import build_report, load_human_ratings, load_rationality, load_sessions
from CogSystem.system import CognitiveSystem, SessionLog, read_run_config
from CogSystem.utils import dumps_json

GOLDENS = Path(__file__).parent / "goldens"
# COG_UPDATE_GOLDENS=1 rewrites the files below from the current code instead of comparing.
UPDATE = os.environ.get("COG_UPDATE_GOLDENS") == "1"


def _session_view(log: SessionLog) -> dict:
    """The parts of a session log that do not depend on prompt digests or embedding geometry."""
    return {
        "agent": log.agent,
        "variant": log.variant,
        "bench": log.bench,
        "topic_id": log.topic_id,
        "profile_name": log.profile_name,
        "complete": log.complete,
        "error": log.error,
        "ltm_size": log.ltm_size,
        "ratings": [[a.rating for a in answers] for _, answers in sorted(log.answer_sets().items())],
        "source_ids": [record.source_ids for record in log.iterations],
        "kept": [[record.retained_count, record.dropped_count] for record in log.iterations],
        "templates": [exchange.template_id for exchange in log.exchanges],
    }


def _check(name: str, text: str) -> None:
    path = GOLDENS / name
    if UPDATE:
        path.write_text(text, encoding="utf-8")
    assert path.read_bytes() == text.encode("utf-8")


@pytest.fixture
def mini_sessions(tmp_path):
    out = tmp_path / "runs"
    system = CognitiveSystem(read_run_config("config/runs/mini_coggpt.json", output_dir=str(out)), progress=False)
    for topic_id, profile in system.pairs():
        system(topic_id, profile)
    return load_sessions(str(out))


def test_mini_sessions_match_golden(mini_sessions):
    views = {f"{log.topic_id}__{log.profile_name}": _session_view(log) for log in mini_sessions}
    _check("mini_coggpt_sessions.json", dumps_json(views))


def test_mini_report_matches_golden(mini_sessions):
    report = build_report(
        mini_sessions,
        load_human_ratings("data/mini/humans/ratings.json"),
        load_rationality("data/mini/humans/rationality.json"),
    )
    view = report.model_dump(mode="json", include={"literal", "agents", "coverage_gaps"})
    _check("mini_coggpt_report.json", dumps_json(view))
