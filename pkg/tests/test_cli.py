import json
import os
import pandas as pd
import pytest
from CogSystem.bench import CANONICAL_KEYS
from CogSystem.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

OPINIONS = "\n".join(
    f"Number: {i}\nPerspective: View {i}\nOpinion: Opinion {i} on fishing.\n"
    f"Supporters: Anglers, {'teachers' if i % 2 else 'students'}\nReasons: Reason {i}.\n"
    for i in range(1, 11)
)


def _transcript(path, *replies: str) -> str:
    path.write_text("".join(json.dumps({"response": reply}) + "\n" for reply in replies))
    return str(path)


def _main(*argv: str) -> int:
    return main(["--no-log-file", *argv])


def test_run_and_eval(tmp_path):
    out = tmp_path / "runs"
    assert _main("run", "--config", "config/runs/mini_cot.json", "--output-dir", str(out), "--no-progress") == EXIT_OK
    session = out / "cot" / "a" / "fishing__retired_teacher" / "session.json"
    assert json.loads(session.read_text())["complete"] is True

    reports = tmp_path / "reports"
    code = _main(
        "eval",
        "--sessions", str(out),
        "--humans", "data/mini/humans/ratings.json",
        "--rationality", "data/mini/humans/rationality.json",
        "--out", str(reports),
        "--plot",
    )
    assert code == EXIT_OK
    for name in ("report.json", "report.csv", "summary.csv", "report.png"):
        assert (reports / name).is_file()
    report = json.loads((reports / "report.json").read_text())
    assert [agent["agent"] for agent in report["agents"]] == ["cot"]


def test_run_with_jobs(tmp_path):
    code = _main(
        "run", "--config", "config/runs/mini_coggpt.json", "--output-dir", str(tmp_path), "--jobs", "2"
    )
    assert code == EXIT_OK
    assert sorted(os.listdir(tmp_path / "coggpt" / "a")) == [
        "fishing__retired_teacher",
        "pets__retired_teacher",
    ]


def test_run_usage_errors(tmp_path):
    missing = str(tmp_path / "none.jsonl")
    assert _main("run", "--config", "config/runs/mini_cot.json", "--transcript", missing, "--output-dir", str(tmp_path)) == EXIT_USAGE
    assert _main("run", "--config", "config/runs/mini_cot.json", "--agent-config", "config/agents/coggpt.json") == EXIT_USAGE
    assert _main("run", "--config", "config/runs/nope.json") == EXIT_USAGE


def test_run_reports_aborted_sessions(tmp_path):
    short = _transcript(tmp_path / "short.jsonl", "Thoughts: fine\nRating: 3")
    code = _main("run", "--config", "config/runs/mini_cot.json", "--transcript", short, "--output-dir", str(tmp_path))
    assert code == EXIT_FAILURE


def test_eval_without_sessions(tmp_path):
    (tmp_path / "empty").mkdir()
    code = _main("eval", "--sessions", str(tmp_path / "empty"), "--humans", "data/mini/humans/ratings.json", "--out", str(tmp_path))
    assert code == EXIT_FAILURE


def test_validate(capsys, mini_copy):
    assert _main("validate", "--bench", "data/mini") == EXIT_OK
    assert "data/mini: OK" in capsys.readouterr().out
    (mini_copy / "flows" / "fishing" / "003.json").unlink()
    assert _main("validate", "--bench", str(mini_copy)) == EXIT_FAILURE
    assert "flow_count\t" in capsys.readouterr().out


def test_stats(capsys):
    assert _main("stats", "--bench", "data/mini", "--reference") == EXIT_OK
    out = capsys.readouterr().out
    assert "Sports" in out and "12.40" in out and "11.70" in out


def test_replay_inspect(capsys):
    code = _main("replay-inspect", "--transcript", "data/mini/transcripts/coggpt/fishing__retired_teacher.jsonl", "--width", "20")
    assert code == EXIT_OK
    assert capsys.readouterr().out.rstrip().endswith("53 entries")


def test_export_sheet(tmp_path):
    _main("run", "--config", "config/runs/mini_react.json", "--output-dir", str(tmp_path))
    session = tmp_path / "react" / "a" / "fishing__retired_teacher" / "session.json"
    out = tmp_path / "sheet.csv"
    assert _main("export-sheet", "--session", str(session), "--out", str(out), "--bench", "data/mini") == EXIT_OK
    sheet = pd.read_csv(out)
    assert list(sheet.columns[:4]) == ["agent", "topic_id", "profile_name", "iteration"]
    assert len(sheet) == 33
    assert sheet["statement"].str.len().min() > 0
    assert (tmp_path / "sheet.guidelines.txt").is_file()
    assert _main("export-sheet", "--session", str(tmp_path / "nope.json"), "--out", str(out)) == EXIT_USAGE


def test_dataset_pipeline(tmp_path, capsys):
    transcript = _transcript(tmp_path / "opinions.jsonl", OPINIONS)
    opinions = str(tmp_path / "fishing.json")
    assert _main("gen", "opinions", "--topic", "Fishing", "--transcript", transcript, "--out", opinions) == EXIT_OK

    ranks = tmp_path / "ranks.csv"
    assert _main("gen", "rank", "--opinions", opinions, "--top", "2", "--out", str(ranks)) == EXIT_OK
    assert ranks.read_text().splitlines() == ["rank,supporter,mentions", "1,anglers,10", "2,teachers,5"]
    assert "anglers" in capsys.readouterr().out

    sheet = tmp_path / "sheet.json"
    assert _main("gen", "sheet", "--opinions", opinions, "--out", str(sheet)) == EXIT_OK
    data = json.loads(sheet.read_text())
    for row in data["entries"][:4]:
        row.update(relevance=True, distinctiveness=True, clarity=True, contextual_truth=True)
    sheet.write_text(json.dumps(data))
    questionnaire = tmp_path / "q.json"
    assert _main("gen", "import", "--sheet", str(sheet), "--out", str(questionnaire)) == EXIT_OK
    record = json.loads(questionnaire.read_text())
    assert record["topic_id"] == "fishing"
    assert [q["id"] for q in record["questions"]] == ["fishing-q01", "fishing-q02", "fishing-q03", "fishing-q04"]


def test_gen_failures(tmp_path):
    bad = _transcript(tmp_path / "bad.jsonl", "No opinions today.")
    assert _main("gen", "opinions", "--topic", "Fishing", "--transcript", bad, "--out", str(tmp_path / "o.json")) == EXIT_FAILURE
    thin = _transcript(tmp_path / "thin.jsonl", "\n".join(f"{k}: x" for k in CANONICAL_KEYS[:4]))
    assert _main("gen", "profile", "--character", "a baker", "--transcript", thin, "--out", str(tmp_path / "p.json")) == EXIT_FAILURE
    assert _main("gen", "opinions", "--topic", "Fishing", "--out", str(tmp_path / "o.json")) == EXIT_USAGE


def test_gen_profile(tmp_path):
    reply = "\n".join(f"{k}: {k.lower()} here" for k in CANONICAL_KEYS)
    transcript = _transcript(tmp_path / "profile.jsonl", reply)
    out = tmp_path / "baker.json"
    assert _main("gen", "profile", "--character", "a baker", "--transcript", transcript, "--out", str(out)) == EXIT_OK
    assert json.loads(out.read_text())["Occupation"] == "occupation here"


def test_log_file_is_written(tmp_path):
    assert main(["--log-dir", str(tmp_path / "logs"), "validate", "--bench", "data/mini"]) == EXIT_OK
    assert any(name.startswith("validate_") for name in os.listdir(tmp_path / "logs"))


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
