from CogSystem.bench.profile import CANONICAL_KEYS, ProfileDoc, canonical_key
from CogSystem.bench.schema import (
    BATCH_SIZE,
    CANONICAL_ITERATIONS,
    FLOWS_PER_TOPIC,
    BenchmarkSet,
    InfoItem,
    IterationPlan,
    Modality,
    Question,
    Questionnaire,
    StatsTable,
    ValidationReport,
    Variant,
    Violation,
)
from CogSystem.bench.loader import load_benchmark, save_benchmark
from CogSystem.bench.schedule import plan_iterations
from CogSystem.bench.stats import corpus_stats, reference_stats, stats_frame
from CogSystem.bench.validate import validate_benchmark
from CogSystem.bench.topics import TOPIC_CATALOG, category_of, topics_of
