from CogSystem.evaluation.metrics import (
    LIKERT,
    Polarity,
    RatingVector,
    authenticity,
    authenticity_literal,
    authenticity_polarity,
    cohen_kappa,
    fleiss_kappa,
    majority_rating,
    mean_pairwise_spearman,
    panel_fleiss,
    polarity_codes,
    spearman_rho,
    to_polarity,
)
from CogSystem.evaluation.report import (
    PUBLISHED_REFERENCE,
    AgentReport,
    AgreementStats,
    HumanRating,
    IterationMetrics,
    MetricsReport,
    MetricSummary,
    RationalityScore,
    agreement_stats,
    build_report,
    load_human_ratings,
    load_rationality,
    load_sessions,
    report_frame,
    summary_frame,
    write_report,
)
from CogSystem.evaluation.sheets import (
    RATING_GUIDELINE,
    RATIONALITY_RUBRIC,
    export_rating_sheet,
    guideline_text,
)
from CogSystem.evaluation.plot import plot_report
