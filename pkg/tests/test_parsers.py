import pytest
from CogSystem.bench import CANONICAL_KEYS
from CogSystem.errors import (
    InterpretationParseError,
    KnowledgeParseError,
    OpinionParseError,
    ParseError,
    ProfileParseError,
)
from CogSystem.prompts import (
    parse_interpretation,
    parse_knowledge_list,
    parse_opinion_set,
    parse_profile_text,
    parse_profile_update,
    parse_reflection,
)

FULL_PROFILE = "\n".join(f"{key}: value {i}" for i, key in enumerate(CANONICAL_KEYS))

# (reply, expected rating or None for a parse error)
INTERPRETATIONS = [
    ("Thoughts: I love hiking.\nRating: 4", 4),
    ("thoughts: casing drift\nRATING: 2", 2),
    ("**Thoughts:** bold headers\n**Rating:** 5", 5),
    ("Thoughts: fraction\nRating: 4/5", 4),
    ("Thoughts: with unit\nRating: 3 points", 3),
    ("I mostly agree with this. Rating: 4", 4),
    ("Thoughts: rating on the next line\nRating:\n\n2", 2),
    ("- Thoughts: bulleted\n- Rating: 1", 1),
    ("Rating: 5\nThoughts: reasons after the rating", 5),
    ("Thoughts: out of range\nRating: 7", None),
    ("Thoughts: spelled out\nRating: ten", None),
    ("Thoughts: no rating at all", None),
    ("Rating: 10/10", None),
    ("", None),
]


@pytest.mark.parametrize("reply,expected", INTERPRETATIONS)
def test_interpretation_corpus(reply, expected):
    if expected is None:
        with pytest.raises(InterpretationParseError):
            parse_interpretation(reply)
    else:
        assert parse_interpretation(reply).rating == expected


def test_interpretation_thoughts():
    parsed = parse_interpretation("Thoughts: I love hiking.\nRating: 4")
    assert parsed.thoughts == "I love hiking."
    assert parse_interpretation("Rating: 5\nThoughts: after").thoughts == "after"
    assert parse_interpretation("I mostly agree. Rating: 4").thoughts == "I mostly agree."


@pytest.mark.parametrize("rating", [1, 2, 3, 4, 5])
def test_interpretation_round_trip(rating):
    assert parse_interpretation(f"Thoughts: t\nRating: {rating}").rating == rating


KNOWLEDGE = [
    ('```json\n[ {"thoughts":"t","knowledge":"k","score":3} ]\n```', [3]),
    ("[]", []),
    ('Here you go:\n[{"thoughts": "a", "knowledge": "b", "score": "4"}]\nHope it helps.', [4]),
    ('See [note] first. [{"thoughts": "a", "knowledge": "b", "score": 2.0}]', [2]),
    ('[{"thoughts": "a", "knowledge": "b", "score": 7}]', None),
    ('[{"thoughts": "a", "score": 1}]', None),
    ('{"thoughts": "a", "knowledge": "b", "score": 1}', None),
    ('[{"thoughts": "a", "knowledge": "b", "score": 1}', None),
    ('[{"thoughts": "a", "knowledge": "b", "score": true}]', None),
]


@pytest.mark.parametrize("reply,scores", KNOWLEDGE)
def test_knowledge_corpus(reply, scores):
    if scores is None:
        with pytest.raises(KnowledgeParseError):
            parse_knowledge_list(reply)
    else:
        assert [draft.score for draft in parse_knowledge_list(reply)] == scores


def test_knowledge_error_names_index():
    reply = '[{"thoughts": "a", "knowledge": "b", "score": 3}, {"thoughts": "a", "knowledge": "c", "score": 0}]'
    with pytest.raises(KnowledgeParseError) as info:
        parse_knowledge_list(reply)
    assert info.value.index == 1
    drafts = parse_knowledge_list(reply, skip_invalid=True)
    assert [draft.knowledge for draft in drafts] == ["b"]


def test_deeply_nested_array_is_a_parse_error():
    with pytest.raises(KnowledgeParseError):
        parse_knowledge_list("[" * 3000)


def test_profile_update_full():
    parsed = parse_profile_update(
        f"Assessments: news matters.\nThoughts: adjust.\nUpdated Profile:\n{FULL_PROFILE}"
    )
    assert parsed.assessments == "news matters."
    assert parsed.thoughts == "adjust."
    assert parsed.updated_profile.missing_keys == ()
    assert parsed.updated_profile["Future Outlook"] == f"value {len(CANONICAL_KEYS) - 1}"


def test_profile_update_extras_and_decoration():
    parsed = parse_profile_update(
        "## Assessments:\nx\n**THOUGHTS:** y\nupdated profile:\n"
        f"{FULL_PROFILE}\n- **Motto:** carpe diem"
    )
    assert parsed.updated_profile.extras == {"Motto": "carpe diem"}
    assert len(parsed.updated_profile.attributes) == len(CANONICAL_KEYS)


def test_profile_update_missing_section():
    with pytest.raises(ProfileParseError, match="Updated Profile"):
        parse_profile_update("Assessments: x\nThoughts: y\nName: Ann")
    with pytest.raises(ProfileParseError):
        parse_profile_update("Thoughts: y\nAssessments: x\nUpdated Profile:\nName: Ann")


def test_profile_text_continuation_lines():
    profile = parse_profile_text("Name: Ann\nHobbies: reading\n  and long walks")
    assert profile["Hobbies"] == "reading and long walks"
    with pytest.raises(ProfileParseError):
        parse_profile_text("Just prose without keys.")


OPINIONS = """Number: 1
Perspective: Conservation
Opinion: Catch and release should be the norm.
Supporters: students, teachers
Reasons: It protects fish stocks.

Number: 2
Perspective: Tradition
Opinion: Anglers may keep what they catch.
Supporters: Rural families ,  retirees
Reasons: Fishing feeds families.
"""


def test_opinion_set():
    opinions = parse_opinion_set(OPINIONS, topic="Fishing")
    assert opinions.topic == "Fishing"
    assert [entry.number for entry in opinions.entries] == [1, 2]
    assert opinions.entries[0].supporters == ["students", "teachers"]
    assert opinions.entries[1].supporters == ["Rural families", "retirees"]


def test_opinion_set_skips_incomplete_and_repeated_blocks():
    text = OPINIONS + "\nNumber: 3\nPerspective: Missing the rest\n\n" + OPINIONS.split("\n\n")[0]
    opinions = parse_opinion_set(text)
    assert [entry.number for entry in opinions.entries] == [1, 2]


def test_opinion_set_needs_a_block():
    with pytest.raises(OpinionParseError):
        parse_opinion_set("Fishing is a divisive topic with many views.")


def test_reflection():
    assert parse_reflection("Reflection: I ignored my values.") == "I ignored my values."
    assert parse_reflection("I ignored my values.") == "I ignored my values."
    with pytest.raises(InterpretationParseError):
        parse_reflection("Reflection:   ")


@pytest.mark.parametrize(
    "text",
    ["", "\x00\x01", "[[[{", "Rating:", "Number:", "```", "{" * 50, "Updated Profile:" * 3, "🙂" * 10],
)
def test_parsers_only_raise_parse_errors(text):
    for parse in (
        parse_interpretation,
        parse_knowledge_list,
        parse_opinion_set,
        parse_profile_update,
        parse_profile_text,
        parse_reflection,
    ):
        try:
            parse(text)
        except ParseError:
            pass
