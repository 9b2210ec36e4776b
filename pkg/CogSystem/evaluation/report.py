import os
import glob
import numpy as np
import pandas as pd
from collections import defaultdict
from typing import Optional
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError
from CogSystem.errors import ConfigError, EvaluationError
from CogSystem.evaluation.metrics import (
    authenticity,
    authenticity_literal,
    authenticity_polarity,
    majority_rating,
    mean_pairwise_spearman,
    panel_fleiss,
    polarity_codes,
)
from CogSystem.system import SessionLog
from CogSystem.utils import dumps_json, read_json, write_text_atomic

MILESTONES = {"5th": 5, "10th": 10}

# Published results of GPT-4 agents rated by seven annotators, kept for side-by-side reading.
PUBLISHED_REFERENCE = {
    "note": "Published GPT-4 results rated by seven human annotators; not reproducible with this harness.",
    "authenticity": {
        "cot": {"a": [0.182, 0.192, 0.091], "v": [0.153, 0.302, 0.131]},
        "react": {"a": [0.236, 0.144, 0.270], "v": [0.212, 0.241, 0.227]},
        "reflexion": {"a": [0.302, 0.327, 0.244], "v": [0.329, 0.352, 0.373]},
        "coggpt": {"a": [0.536, 0.415, 0.597], "v": [0.532, 0.496, 0.611]},
    },
    "rationality": {
        "cot": {"a": [2.925, 2.883, 3.167], "v": [3.058, 3.767, 3.083]},
        "react": {"a": [3.415, 3.483, 3.483], "v": [3.535, 3.800, 3.800]},
        "reflexion": {"a": [3.658, 3.917, 3.533], "v": [3.888, 3.967, 3.917]},
        "coggpt": {"a": [4.118, 4.117, 4.300], "v": [4.145, 4.183, 4.317]},
    },
    "columns": ["avg", "5th", "10th"],
    "inter_rater": {
        "ratings": {"fleiss": 0.693, "fleiss_polarity": 0.780, "spearman_avg": 0.770},
        "rationality": {"fleiss": 0.646, "fleiss_polarity": 0.813, "spearman_avg": 0.839},
    },
}


class HumanRating(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    annotator_id: str
    topic_id: str
    iteration: int = Field(ge=0)
    question_id: str
    rating: int = Field(ge=1, le=5)


class RationalityScore(BaseModel):
    """A human 1-5 score of an agent's reasoning. `agent` and `profile_name` narrow it to one session."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    annotator_id: str
    topic_id: str
    iteration: int = Field(ge=0)
    question_id: str
    score: int = Field(ge=1, le=5)
    agent: Optional[str] = None
    profile_name: Optional[str] = None


class IterationMetrics(BaseModel):
    iteration: int
    sessions: int = 0
    authenticity: Optional[float] = None
    authenticity_polarity: Optional[float] = None
    authenticity_literal: Optional[float] = None
    rationality: Optional[float] = None


class MetricSummary(BaseModel):
    zeroth: Optional[float] = None
    avg: Optional[float] = None
    fifth: Optional[float] = None
    tenth: Optional[float] = None


class AgentReport(BaseModel):
    agent: str
    variant: str
    sessions: list[str] = Field(default_factory=list)
    incomplete: list[str] = Field(default_factory=list)
    iterations: list[IterationMetrics] = Field(default_factory=list)
    summary: dict[str, MetricSummary] = Field(default_factory=dict)


class AgreementStats(BaseModel):
    annotators: int
    items: int
    fleiss: Optional[float] = None
    fleiss_polarity: Optional[float] = None
    spearman_avg: Optional[float] = None


class MetricsReport(BaseModel):
    reference: dict = Field(default_factory=lambda: dict(PUBLISHED_REFERENCE))
    literal: bool = False
    agents: list[AgentReport] = Field(default_factory=list)
    agreement: dict[str, Optional[AgreementStats]] = Field(default_factory=dict)
    coverage_gaps: list[str] = Field(default_factory=list)

    def to_json(self) -> str:
        return dumps_json(self.model_dump(mode="json"))


def _read_records(path: str, model: type[BaseModel]) -> list:
    if not os.path.isfile(path):
        raise ConfigError(f"File not found: {path}")
    try:
        return TypeAdapter(list[model]).validate_python(read_json(path))
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid {model.__name__} file {path}: {e}") from e


def load_human_ratings(path: str) -> list[HumanRating]:
    return _read_records(path, HumanRating)


def load_rationality(path: str) -> list[RationalityScore]:
    return _read_records(path, RationalityScore)


def load_sessions(sessions_dir: str) -> list[SessionLog]:
    """Read every `session.json` below `sessions_dir`, in path order.

    Raises:
        `ConfigError`: The directory does not exist.
    """
    if not os.path.isdir(sessions_dir):
        raise ConfigError(f"Sessions directory not found: {sessions_dir}")
    paths = sorted(glob.glob(os.path.join(sessions_dir, "**", "session.json"), recursive=True))
    return [SessionLog.load(path) for path in paths]


def _panel(records: list, value: str, key) -> dict[tuple, dict[str, int]]:
    cells: dict[tuple, dict[str, int]] = defaultdict(dict)
    for record in records:
        cell = key(record)
        if record.annotator_id in cells[cell]:
            logger.warning(f"Duplicate rating by {record.annotator_id} for {cell}; keeping the first")
            continue
        cells[cell][record.annotator_id] = getattr(record, value)
    return cells


def _cell_order(cell: tuple) -> tuple:
    return tuple((part is not None, part if part is not None else 0) for part in cell)


def agreement_stats(cells: dict[tuple, dict[str, int]]) -> Optional[AgreementStats]:
    """Fleiss' kappa (raw and polarity) and mean pairwise Spearman over fully covered cells.

    Returns:
        `Optional[AgreementStats]`: `None` with fewer than two annotators or no fully covered cell.
    """
    annotators = sorted({a for ratings in cells.values() for a in ratings})
    full = sorted(
        (cell for cell, ratings in cells.items() if len(ratings) == len(annotators)),
        key=_cell_order,
    )
    if len(full) < len(cells):
        logger.warning(f"{len(cells) - len(full)} cells lack some annotators and are left out of agreement")
    if len(annotators) < 2 or not full:
        return None
    matrix = np.array([[cells[cell][a] for a in annotators] for cell in full])
    polarity = np.array([polarity_codes(row) for row in matrix])
    return AgreementStats(
        annotators=len(annotators),
        items=len(full),
        fleiss=panel_fleiss(matrix),
        fleiss_polarity=panel_fleiss(polarity),
        spearman_avg=mean_pairwise_spearman(
            {a: matrix[:, j].tolist() for j, a in enumerate(annotators)}
        ),
    )


def _mean(values: list[float]) -> Optional[float]:
    return float(np.mean(values)) if values else None


def _summary(iterations: list[IterationMetrics], metric: str) -> MetricSummary:
    values = {m.iteration: getattr(m, metric) for m in iterations}
    return MetricSummary(
        zeroth=values.get(0),
        avg=_mean([v for t, v in values.items() if t >= 1 and v is not None]),
        fifth=values.get(MILESTONES["5th"]),
        tenth=values.get(MILESTONES["10th"]),
    )


def build_report(
    sessions: list[SessionLog],
    human_ratings: list[HumanRating],
    rationality_scores: Optional[list[RationalityScore]] = None,
    literal: bool = False,
) -> MetricsReport:
    """Score sessions against the human panel, per agent and variant.

    For every session and iteration, Authenticity compares the agent's ratings with the majority rating of the
    panel; Rationality is the majority score of the annotators per answer, averaged over questions. Both are
    then averaged over sessions. The 0th pass is reported apart and left out of `avg`.

    Args:
        `sessions` (`list[SessionLog]`): Session logs, possibly of several agents.
        `human_ratings` (`list[HumanRating]`): The human rating panel.
        `rationality_scores` (`Optional[list[RationalityScore]]`): Human scores of the agents' reasoning. Defaults to `None`.
        `literal` (`bool`, optional): Also report the per-question exact-agreement reading. Defaults to `False`.
    Raises:
        `EvaluationError`: No session answer is covered by the human ratings.
    Returns:
        `MetricsReport`: The report.
    """
    panel = _panel(human_ratings, "rating", lambda r: (r.topic_id, r.iteration, r.question_id))
    scores = _panel(
        rationality_scores or [],
        "score",
        lambda r: (r.agent, r.profile_name, r.topic_id, r.iteration, r.question_id),
    )
    gaps: list[str] = []
    covered = 0
    # (agent, variant) -> iteration -> metric -> per-session values
    values: dict[tuple[str, str], dict[int, dict[str, list[float]]]] = defaultdict(
        lambda: defaultdict(lambda: defaultdict(list))
    )
    reports: dict[tuple[str, str], AgentReport] = {}
    for log in sorted(sessions, key=lambda s: (s.agent, s.variant, s.topic_id, s.profile_name)):
        key = (log.agent, log.variant)
        name = f"{log.topic_id}__{log.profile_name}"
        report = reports.setdefault(key, AgentReport(agent=log.agent, variant=log.variant))
        report.sessions.append(name)
        if not log.complete:
            report.incomplete.append(name)
        for t, answers in sorted(log.answer_sets().items()):
            agent_r, human_r, rationality = [], [], []
            for answer in answers:
                cell = (log.topic_id, t, answer.question_id)
                if cell not in panel:
                    gaps.append(f"ratings {log.agent}/{name} t={t} {answer.question_id}")
                else:
                    agent_r.append(answer.rating)
                    human_r.append(majority_rating(list(panel[cell].values())))
                annotated = {}
                for agent in (log.agent, None):
                    for profile in (log.profile_name, None):
                        for annotator, score in scores.get((agent, profile, *cell), {}).items():
                            annotated.setdefault(annotator, score)
                if annotated:
                    rationality.append(majority_rating(list(annotated.values())))
                elif scores:
                    gaps.append(f"rationality {log.agent}/{name} t={t} {answer.question_id}")
            bucket = values[key][t]
            if agent_r:
                covered += 1
                bucket["authenticity"].append(authenticity(agent_r, human_r))
                bucket["authenticity_polarity"].append(authenticity_polarity(agent_r, human_r))
                if literal:
                    bucket["authenticity_literal"].append(authenticity_literal(agent_r, human_r))
            if rationality:
                bucket["rationality"].append(float(np.mean(rationality)))
    if covered == 0:
        raise EvaluationError("No session answer is covered by the human ratings")
    for gap in gaps:
        logger.warning(f"Coverage gap: {gap}")
    metrics = ["authenticity", "authenticity_polarity", "rationality"]
    if literal:
        metrics.insert(2, "authenticity_literal")
    for key, report in reports.items():
        for t, bucket in sorted(values[key].items()):
            report.iterations.append(
                IterationMetrics(
                    iteration=t,
                    sessions=len(bucket["authenticity"]),
                    **{metric: _mean(bucket[metric]) for metric in metrics},
                )
            )
        report.summary = {metric: _summary(report.iterations, metric) for metric in metrics}
    return MetricsReport(
        literal=literal,
        agents=[reports[key] for key in sorted(reports)],
        agreement={
            "ratings": agreement_stats(panel),
            "rationality": agreement_stats(scores) if scores else None,
        },
        coverage_gaps=gaps,
    )


def report_frame(report: MetricsReport) -> pd.DataFrame:
    """One row per agent, variant and iteration."""
    rows = [
        {
            "agent": agent.agent,
            "variant": agent.variant,
            "iteration": m.iteration,
            "authenticity": m.authenticity,
            "rationality": m.rationality,
        }
        for agent in report.agents
        for m in agent.iterations
    ]
    return pd.DataFrame(
        rows, columns=["agent", "variant", "iteration", "authenticity", "rationality"]
    )


def summary_frame(report: MetricsReport) -> pd.DataFrame:
    """The `0th / avg / 5th / 10th` columns per agent, variant and metric."""
    rows = [
        {
            "agent": agent.agent,
            "variant": agent.variant,
            "metric": metric,
            "0th": s.zeroth,
            "avg": s.avg,
            "5th": s.fifth,
            "10th": s.tenth,
        }
        for agent in report.agents
        for metric, s in agent.summary.items()
    ]
    return pd.DataFrame(rows, columns=["agent", "variant", "metric", "0th", "avg", "5th", "10th"])


def write_report(report: MetricsReport, out_dir: str) -> None:
    """Write `report.json`, `report.csv` and `summary.csv` to `out_dir`."""
    write_text_atomic(os.path.join(out_dir, "report.json"), report.to_json())
    write_text_atomic(
        os.path.join(out_dir, "report.csv"), report_frame(report).to_csv(index=False, lineterminator="\n")
    )
    write_text_atomic(
        os.path.join(out_dir, "summary.csv"), summary_frame(report).to_csv(index=False, lineterminator="\n")
    )
    logger.info(f"Wrote report for {len(report.agents)} agent/variant pairs to {out_dir}")
