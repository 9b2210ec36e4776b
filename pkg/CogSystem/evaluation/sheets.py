import os
import pandas as pd
from loguru import logger
from typing import Optional
from CogSystem.bench import Questionnaire
from CogSystem.system import SessionLog
from CogSystem.utils import write_text_atomic

RATING_GUIDELINE = {
    5: "Strong agreement: the profile or the new information supports the statement clearly.",
    4: "Moderate agreement: the profile or the new information leans towards the statement.",
    3: "Neutral: neither the profile nor the new information points either way.",
    2: "Moderate disagreement: the profile or the new information leans against the statement.",
    1: "Strong disagreement: the profile or the new information clearly conflicts with the statement.",
}

RATIONALITY_RUBRIC = {
    5: "Fully convincing, consistent with the current profile or known information, no errors.",
    4: "Coherent and relevant, draws on the profile or information, small flaws.",
    3: "Relevant but vague where a clear inclination is expected.",
    2: "Unclear or weakly causal: forced analogies or restating the question.",
    1: "Irrelevant or nonsensical, breaks the profile or reveals an artificial speaker.",
}

SHEET_COLUMNS = [
    "agent",
    "topic_id",
    "profile_name",
    "iteration",
    "question_id",
    "statement",
    "agent_rating",
    "agent_reasoning",
    "human_rating",
    "rationality_score",
]


def guideline_text() -> str:
    lines = ["Human rating (what would this person answer now?)"]
    lines += [f"  {points}: {text}" for points, text in RATING_GUIDELINE.items()]
    lines += ["", "Rationality (how good is the agent's reasoning?)"]
    lines += [f"  {points}: {text}" for points, text in RATIONALITY_RUBRIC.items()]
    lines += [
        "",
        "Note profile changes after each iteration's information before rating.",
        "Fill human_rating and rationality_score with integers 1-5.",
    ]
    return "\n".join(lines) + "\n"


def export_rating_sheet(
    log: SessionLog, path: str, questionnaire: Optional[Questionnaire] = None
) -> str:
    """Write an annotation sheet for one session: one row per answer, blank human columns.

    The rating guideline and Rationality rubric go to a sibling `<name>.guidelines.txt`.

    Args:
        `log` (`SessionLog`): The session to annotate.
        `path` (`str`): CSV output path.
        `questionnaire` (`Optional[Questionnaire]`): Adds question statements when given. Defaults to `None`.
    Returns:
        `str`: The path of the guideline file.
    """
    statements = (
        {q.id: q.statement for q in questionnaire.questions} if questionnaire is not None else {}
    )
    rows = [
        {
            "agent": log.agent,
            "topic_id": log.topic_id,
            "profile_name": log.profile_name,
            "iteration": t,
            "question_id": answer.question_id,
            "statement": statements.get(answer.question_id, ""),
            "agent_rating": answer.rating,
            "agent_reasoning": answer.reasoning,
            "human_rating": "",
            "rationality_score": "",
        }
        for t, answers in sorted(log.answer_sets().items())
        for answer in answers
    ]
    frame = pd.DataFrame(rows, columns=SHEET_COLUMNS)
    write_text_atomic(path, frame.to_csv(index=False, lineterminator="\n"))
    guide_path = os.path.splitext(path)[0] + ".guidelines.txt"
    write_text_atomic(guide_path, guideline_text())
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return guide_path
