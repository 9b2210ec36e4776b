import pandas as pd
import pytest
from CogSystem.agents import IterationRecord, QuestionAnswer
from CogSystem.errors import ConfigError, EvaluationError
from CogSystem.evaluation import (
    HumanRating,
    RationalityScore,
    build_report,
    export_rating_sheet,
    load_human_ratings,
    load_sessions,
    write_report,
)
from CogSystem.system import SessionLog

QUESTIONS = ["q1", "q2", "q3", "q4"]


def _answers(ratings: list[int]) -> list[QuestionAnswer]:
    return [
        QuestionAnswer(question_id=qid, rating=r, reasoning=f"because {r}")
        for qid, r in zip(QUESTIONS, ratings)
    ]


def _log(agent: str, by_t: dict[int, list[int]], profile: str = "p", complete: bool = True) -> SessionLog:
    return SessionLog(
        agent=agent,
        variant="a",
        bench="synthetic",
        topic_id="fishing",
        profile_name=profile,
        initial_answers=_answers(by_t[0]),
        iterations=[
            IterationRecord(iteration=t, profile_after={}, answers=_answers(by_t[t]))
            for t in sorted(by_t)
            if t > 0
        ],
        complete=complete,
    )


def _humans(by_t: dict[int, list[int]], annotators=("ann1", "ann2", "ann3")) -> list[HumanRating]:
    return [
        HumanRating(annotator_id=a, topic_id="fishing", iteration=t, question_id=qid, rating=r)
        for a in annotators
        for t, ratings in by_t.items()
        for qid, r in zip(QUESTIONS, ratings)
    ]


def _trajectory(first: list[int]) -> dict[int, list[int]]:
    return {t: first if t == 0 else [5, 4, 2, 1] for t in range(11)}


def test_perfect_agreement_report():
    ratings = _trajectory([5, 4, 2, 1])
    report = build_report([_log("coggpt", ratings)], _humans(ratings))
    (agent,) = report.agents
    assert (agent.agent, agent.variant, agent.sessions) == ("coggpt", "a", ["fishing__p"])
    assert [m.iteration for m in agent.iterations] == list(range(11))
    summary = agent.summary["authenticity"]
    assert (summary.zeroth, summary.avg, summary.fifth, summary.tenth) == (1.0, 1.0, 1.0, 1.0)
    assert report.coverage_gaps == []
    assert report.agreement["ratings"].fleiss == pytest.approx(1.0)
    assert report.agreement["ratings"].annotators == 3
    assert report.agreement["rationality"] is None


def test_zeroth_pass_is_left_out_of_average():
    agent_r = _trajectory([5, 5, 3, 1])
    human_r = _trajectory([5, 3, 3, 1])
    report = build_report([_log("coggpt", agent_r)], _humans(human_r))
    summary = report.agents[0].summary["authenticity"]
    assert summary.zeroth == pytest.approx(7 / 11)
    assert summary.avg == pytest.approx(1.0)


def test_majority_of_the_panel_is_the_reference():
    agent_r = _trajectory([5, 4, 2, 1])
    humans = _humans(agent_r, ("ann1", "ann2")) + _humans(_trajectory([4, 4, 2, 1]), ("ann3",))
    report = build_report([_log("coggpt", agent_r)], humans)
    assert report.agents[0].summary["authenticity"].zeroth == 1.0
    assert report.agreement["ratings"].fleiss < 1.0


def test_sessions_are_averaged_per_agent():
    human_r = _trajectory([5, 4, 2, 1])
    logs = [
        _log("coggpt", human_r, profile="p1"),
        _log("coggpt", _trajectory([5, 5, 3, 1]), profile="p2", complete=False),
        _log("cot", _trajectory([1, 1, 1, 1]), profile="p1"),
    ]
    human_r = _trajectory([5, 3, 3, 1])
    report = build_report(logs, _humans(human_r))
    coggpt, cot = report.agents
    assert coggpt.agent == "coggpt" and cot.agent == "cot"
    assert coggpt.sessions == ["fishing__p1", "fishing__p2"]
    assert coggpt.incomplete == ["fishing__p2"]
    assert coggpt.iterations[0].sessions == 2
    # p1 gives 5,4,2,1 and p2 gives 5,5,3,1 against 5,3,3,1
    p1 = build_report([logs[0]], _humans(human_r)).agents[0].iterations[0].authenticity
    assert coggpt.iterations[0].authenticity == pytest.approx((p1 + 7 / 11) / 2)
    assert cot.summary["authenticity"].zeroth == pytest.approx(0.0)


def test_coverage_gaps_are_listed():
    ratings = _trajectory([5, 4, 2, 1])
    humans = [h for h in _humans(ratings) if h.iteration != 10]
    report = build_report([_log("coggpt", ratings)], humans)
    assert len(report.coverage_gaps) == 4
    assert report.coverage_gaps[0] == "ratings coggpt/fishing__p t=10 q1"
    summary = report.agents[0].summary["authenticity"]
    assert summary.tenth is None and summary.avg == 1.0


def test_no_coverage_is_an_error():
    ratings = _trajectory([5, 4, 2, 1])
    other = [h.model_copy(update={"topic_id": "pets"}) for h in _humans(ratings)]
    with pytest.raises(EvaluationError):
        build_report([_log("coggpt", ratings)], other)


def test_rationality_majority_then_mean():
    ratings = _trajectory([5, 4, 2, 1])
    scores = [
        RationalityScore(annotator_id=a, topic_id="fishing", iteration=t, question_id=qid, score=s)
        for t in range(11)
        for a, s in (("ann1", 4), ("ann2", 4), ("ann3", 2))
        for qid in QUESTIONS
    ]
    scores += [
        RationalityScore(
            annotator_id="ann1", topic_id="fishing", iteration=0, question_id="q1", score=1, agent="cot"
        )
    ]
    report = build_report([_log("coggpt", ratings)], _humans(ratings), scores)
    summary = report.agents[0].summary["rationality"]
    assert summary.zeroth == 4.0 and summary.avg == 4.0
    assert report.agreement["rationality"].annotators == 3


def test_session_specific_rationality_beats_generic_scores():
    ratings = _trajectory([5, 4, 2, 1])
    scores = [
        RationalityScore(annotator_id=a, topic_id="fishing", iteration=t, question_id=qid, score=s, **narrow)
        for t in range(11)
        for a in ("ann1", "ann2", "ann3")
        for qid in QUESTIONS
        for s, narrow in ((1, {}), (5, {"agent": "coggpt", "profile_name": "p"}))
    ]
    report = build_report([_log("coggpt", ratings)], _humans(ratings), scores)
    summary = report.agents[0].summary["rationality"]
    assert summary.zeroth == 5.0 and summary.avg == 5.0


def test_literal_reading_is_optional():
    agent_r = _trajectory([5, 5, 3, 1])
    human_r = _trajectory([5, 3, 3, 1])
    assert "authenticity_literal" not in build_report([_log("coggpt", agent_r)], _humans(human_r)).agents[0].summary
    report = build_report([_log("coggpt", agent_r)], _humans(human_r), literal=True)
    assert report.agents[0].summary["authenticity_literal"].zeroth == pytest.approx(0.75)


def test_write_report_is_deterministic(tmp_path):
    ratings = _trajectory([5, 4, 2, 1])
    logs = [_log("coggpt", ratings), _log("cot", _trajectory([5, 4, 4, 1]))]
    for out in ("one", "two"):
        write_report(build_report(logs, _humans(ratings)), str(tmp_path / out))
    for name in ("report.json", "report.csv", "summary.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()
    summary = pd.read_csv(tmp_path / "one" / "summary.csv")
    assert list(summary.columns) == ["agent", "variant", "metric", "0th", "avg", "5th", "10th"]
    assert len(pd.read_csv(tmp_path / "one" / "report.csv")) == 22


def test_mini_panel_scores_coggpt(tmp_path):
    from CogSystem.system import CognitiveSystem, read_run_config

    system = CognitiveSystem(
        read_run_config("config/runs/mini_coggpt.json", output_dir=str(tmp_path)), progress=False
    )
    for topic_id, profile in system.pairs():
        system(topic_id, profile)
    sessions = load_sessions(str(tmp_path))
    assert len(sessions) == 2
    report = build_report(sessions, load_human_ratings("data/mini/humans/ratings.json"))
    assert report.coverage_gaps == []
    assert report.agents[0].summary["authenticity"].avg == pytest.approx(1.0)


def test_loaders_reject_bad_files(tmp_path):
    with pytest.raises(ConfigError):
        load_sessions(str(tmp_path / "missing"))
    bad = tmp_path / "ratings.json"
    bad.write_text('[{"annotator_id": "a", "rating": 9}]')
    with pytest.raises(ConfigError):
        load_human_ratings(str(bad))


def test_export_rating_sheet(tmp_path):
    ratings = {t: [4, 4, 2] for t in range(3)}
    log = _log("coggpt", ratings)
    guide = export_rating_sheet(log, str(tmp_path / "sheet.csv"))
    sheet = pd.read_csv(tmp_path / "sheet.csv", keep_default_na=False)
    assert len(sheet) == 9
    assert sheet["iteration"].tolist() == [0, 0, 0, 1, 1, 1, 2, 2, 2]
    assert sheet["human_rating"].tolist() == [""] * 9
    assert sheet["agent_reasoning"][0] == "because 4"
    assert guide == str(tmp_path / "sheet.guidelines.txt")
    assert "Rationality" in open(guide).read()
