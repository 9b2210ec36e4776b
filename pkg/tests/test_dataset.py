import json
import pytest
from CogSystem.bench import CANONICAL_KEYS
from CogSystem.errors import ConfigError, OpinionParseError, ProfileGenerationError, ReviewSheetError
from CogSystem.dataset import (
    export_review_sheet,
    generate_category,
    generate_opinion_set,
    generate_profile,
    import_review_sheet,
    load_opinion_set,
    rank_supporters,
    read_review_sheet,
    save_opinion_set,
)
from CogSystem.prompts import OpinionEntry, OpinionSet


def _block(n: int, supporters: str = "anglers, teachers") -> str:
    return (
        f"Number: {n}\nPerspective: View {n}\nOpinion: Opinion number {n} on fishing.\n"
        f"Supporters: {supporters}\nReasons: Reason {n}.\n"
    )


def _opinions(n: int) -> str:
    return "\n".join(_block(i) for i in range(1, n + 1))


def _set(*supporters: list[str], topic: str = "Fishing") -> OpinionSet:
    return OpinionSet(
        topic=topic,
        entries=[
            OpinionEntry(number=i, perspective="p", opinion=f"o{i}", supporters=s, reasons="r")
            for i, s in enumerate(supporters, start=1)
        ],
    )


@pytest.mark.parametrize("count", [10, 8])
def test_generate_opinion_set(scripted, count):
    opinions = generate_opinion_set("Fishing", scripted(_opinions(count)))
    assert opinions.topic == "Fishing"
    assert [entry.number for entry in opinions.entries] == list(range(1, count + 1))
    assert opinions.entries[0].supporters == ["anglers", "teachers"]


def test_generate_opinion_set_unparseable(scripted):
    with pytest.raises(OpinionParseError):
        generate_opinion_set("Fishing", scripted("I would rather not list opinions."))


def test_generate_category(scripted):
    llm = scripted(*[_opinions(10)] * 5)
    sets = generate_category("sports", llm)
    assert list(sets) == ["Extreme Sports", "Winter Sports", "Fishing", "Ball Sports", "Combat Sports"]
    with pytest.raises(ConfigError):
        generate_category("Astrology", llm)


def test_opinion_set_files(tmp_path, scripted):
    opinions = generate_opinion_set("Fishing", scripted(_opinions(3)))
    path = str(tmp_path / "fishing.json")
    save_opinion_set(opinions, path)
    assert load_opinion_set(path) == opinions
    with pytest.raises(ConfigError):
        load_opinion_set(str(tmp_path / "missing.json"))
    (tmp_path / "bad.json").write_text('{"entries": 3}')
    with pytest.raises(ConfigError):
        load_opinion_set(str(tmp_path / "bad.json"))


def test_rank_supporters():
    sets = [
        _set(["Anglers", "students"], ["teachers ", "anglers"]),
        _set(["Students", "retirees"], ["  ANGLERS"], topic="Pets"),
    ]
    ranking = rank_supporters(sets)
    assert [(r.supporter, r.mentions, r.rank) for r in ranking] == [
        ("anglers", 3, 1),
        ("students", 2, 2),
        ("teachers", 1, 3),
        ("retirees", 1, 4),
    ]


def test_rank_supporters_ties_keep_first_appearance():
    ranking = rank_supporters([_set(["b", "a"], ["a", "b"], ["c"])])
    assert [r.supporter for r in ranking] == ["b", "a", "c"]
    assert [r.rank for r in ranking] == [1, 2, 3]
    assert rank_supporters([]) == []


def _profile_text(keys) -> str:
    return "\n".join(f"{key}: {key.lower()} value" for key in keys)


def test_generate_profile_full(scripted):
    profile = generate_profile("a retired fisherman", scripted(_profile_text(CANONICAL_KEYS)))
    assert profile.missing_keys == ()
    assert profile.attributes["Name"] == "name value"


def test_generate_profile_with_ten_keys(scripted):
    profile = generate_profile("a student", scripted(_profile_text(CANONICAL_KEYS[:10])))
    assert len(profile.missing_keys) == len(CANONICAL_KEYS) - 10
    assert profile.attributes["Hobbies"] == "hobbies value"
    assert profile.attributes["Future Outlook"] == ""


@pytest.mark.parametrize("reply", [_profile_text(CANONICAL_KEYS[:5]), "I cannot invent people."])
def test_generate_profile_rejects_thin_replies(scripted, reply):
    with pytest.raises(ProfileGenerationError):
        generate_profile("a student", scripted(reply))


def _review(tmp_path, n: int = 10):
    opinions = OpinionSet(
        topic="Fishing",
        entries=[
            OpinionEntry(number=i, perspective=f"p{i}", opinion=f"Opinion {i}.", supporters=["x"], reasons="r")
            for i in range(1, n + 1)
        ],
    )
    path = tmp_path / "review.json"
    sheet = export_review_sheet(opinions, str(path))
    return path, sheet


def _fill(path, decide) -> None:
    data = json.loads(path.read_text())
    for row in data["entries"]:
        decide(row)
    path.write_text(json.dumps(data))


def test_export_review_sheet(tmp_path):
    path, sheet = _review(tmp_path)
    assert sheet.topic_id == "fishing"
    assert set(sheet.guidelines) == {"relevance", "distinctiveness", "clarity", "contextual_truth"}
    assert all(entry.relevance is None and not entry.accepted for entry in sheet.entries)
    assert read_review_sheet(str(path)) == sheet
    with pytest.raises(ReviewSheetError):
        export_review_sheet(OpinionSet(topic="", entries=[]), str(tmp_path / "x.json"))


def test_import_accepts_fully_flagged_rows(tmp_path):
    path, _ = _review(tmp_path)

    def decide(row):
        ok = row["number"] <= 7
        for flag in ("relevance", "distinctiveness", "clarity", "contextual_truth"):
            row[flag] = True
        row["contextual_truth"] = ok
        if row["number"] == 2:
            row["revised_opinion"] = "  A clearer second opinion.  "

    _fill(path, decide)
    questionnaire = import_review_sheet(str(path))
    assert questionnaire.topic_id == "fishing"
    assert [q.id for q in questionnaire.questions] == [f"fishing-q{i:02d}" for i in range(1, 8)]
    assert questionnaire.questions[0].statement == "Opinion 1."
    assert questionnaire.questions[1].statement == "A clearer second opinion."


def test_unset_flags_reject_a_row(tmp_path):
    path, _ = _review(tmp_path, n=2)

    def decide(row):
        row.update(relevance=True, distinctiveness=True, clarity=True)
        row["contextual_truth"] = True if row["number"] == 1 else None

    _fill(path, decide)
    assert [q.id for q in import_review_sheet(str(path)).questions] == ["fishing-q01"]


def test_malformed_flag_names_the_row(tmp_path):
    path, _ = _review(tmp_path, n=3)
    _fill(path, lambda row: row.update(clarity="yes") if row["number"] == 3 else None)
    with pytest.raises(ReviewSheetError, match=r"Row 2 \(number 3\).*'clarity'"):
        import_review_sheet(str(path))


def _accept_all(row) -> None:
    row.update(relevance=True, distinctiveness=True, clarity=True, contextual_truth=True)


def test_duplicate_accepted_number_names_the_row(tmp_path):
    path, _ = _review(tmp_path, n=3)

    def decide(row):
        _accept_all(row)
        if row["number"] == 3:
            row["number"] = 1

    _fill(path, decide)
    with pytest.raises(ReviewSheetError, match=r"Row 2 \(number 1\).*row 0"):
        import_review_sheet(str(path))


def test_blank_accepted_opinion_names_the_row(tmp_path):
    path, _ = _review(tmp_path, n=2)

    def decide(row):
        _accept_all(row)
        if row["number"] == 2:
            row["opinion"] = "   "

    _fill(path, decide)
    with pytest.raises(ReviewSheetError, match=r"Row 1 \(number 2\)"):
        import_review_sheet(str(path))


def test_review_sheet_errors(tmp_path):
    path, _ = _review(tmp_path, n=2)
    with pytest.raises(ReviewSheetError, match="no entry"):
        import_review_sheet(str(path))
    with pytest.raises(ReviewSheetError):
        import_review_sheet(str(tmp_path / "missing.json"))
    (tmp_path / "broken.json").write_text("{not json")
    with pytest.raises(ReviewSheetError, match="invalid JSON"):
        read_review_sheet(str(tmp_path / "broken.json"))
