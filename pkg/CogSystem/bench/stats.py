import pandas as pd
from CogSystem.bench.schema import BenchmarkSet, StatsTable, Variant

# Published mean word counts per category of the canonical corpora.
REFERENCE_WORD_COUNTS: dict[Variant, dict[str, float]] = {
    Variant.ARTICLE: {
        "Entertainment": 2261.26,
        "Culture": 1997.44,
        "Education": 2394.96,
        "Economy": 1842.32,
        "Health": 1782.74,
        "Technology": 2351.68,
        "Society": 1864.22,
        "Life": 2015.60,
        "Sports": 2135.24,
        "Fashion": 1799.94,
    },
    Variant.VIDEO: {
        "Entertainment": 283.98,
        "Culture": 323.81,
        "Education": 231.62,
        "Economy": 399.42,
        "Health": 182.01,
        "Technology": 246.40,
        "Society": 315.23,
        "Life": 250.70,
        "Sports": 236.56,
        "Fashion": 190.29,
    },
}
REFERENCE_OVERALL: dict[Variant, float] = {Variant.ARTICLE: 2044.54, Variant.VIDEO: 289.60}


def corpus_stats(bench: BenchmarkSet) -> StatsTable:
    """
    Mean word count of the information flow per category, plus the grand mean over all items.

    Args:
        `bench` (`BenchmarkSet`): The loaded benchmark.
    Returns:
        `StatsTable`: Categories in first-appearance order; empty for an empty benchmark.
    """
    rows = [
        {"category": item.category, "word_count": item.word_count}
        for items in bench.flows.values()
        for item in items
    ]
    if not rows:
        return StatsTable()
    df = pd.DataFrame(rows)
    grouped = df.groupby("category", sort=False)["word_count"]
    means = grouped.mean()
    counts = grouped.count()
    return StatsTable(
        categories={str(k): float(v) for k, v in means.items()},
        counts={str(k): int(v) for k, v in counts.items()},
        overall=float(df["word_count"].sum()) / len(df),
    )


def reference_stats(variant: Variant) -> StatsTable:
    """The published per-category means of the canonical corpus of `variant`."""
    return StatsTable(
        categories=dict(REFERENCE_WORD_COUNTS[variant]),
        overall=REFERENCE_OVERALL[variant],
    )


def stats_frame(table: StatsTable, reference: StatsTable | None = None) -> pd.DataFrame:
    """Tabulate a `StatsTable` (optionally beside a reference) for printing."""
    index = list(table.categories) + ["Avg."]
    data = {
        "items": [table.counts.get(c, 0) for c in table.categories] + [sum(table.counts.values())],
        "mean_words": list(table.categories.values()) + [table.overall],
    }
    if reference is not None:
        data["reference"] = [reference.categories.get(c) for c in table.categories] + [
            reference.overall
        ]
    return pd.DataFrame(data, index=index)
