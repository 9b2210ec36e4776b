from CogSystem.bench.schema import (
    FLOWS_PER_TOPIC,
    VARIANT_MODALITY,
    BenchmarkSet,
    ValidationReport,
    Violation,
)


def validate_benchmark(bench: BenchmarkSet) -> ValidationReport:
    """
    Check a loaded benchmark against the canonical layout and report every violation without stopping at the first.

    Checked: flow counts per topic (10 articles / 100 video texts), empty flow texts, modality against the
    variant, questionnaires without flows and flows without questionnaires, and canonical keys missing from
    profile files.

    Args:
        `bench` (`BenchmarkSet`): The benchmark to check.
    Returns:
        `ValidationReport`: The violations; empty when the benchmark is well-formed.
    """
    violations: list[Violation] = []
    expected_count = FLOWS_PER_TOPIC[bench.variant]
    expected_modality = VARIANT_MODALITY[bench.variant]
    questionnaire_topics = {q.topic_id for q in bench.questionnaires}

    for topic_id, items in bench.flows.items():
        if len(items) != expected_count:
            violations.append(
                Violation(
                    code="flow_count",
                    location=f"flows/{topic_id}",
                    message=f"{len(items)} items; variant {bench.variant.value} expects {expected_count}",
                )
            )
        for item in items:
            if not item.text.strip():
                violations.append(
                    Violation(
                        code="empty_text",
                        location=f"flows/{topic_id}/{item.id}",
                        message="text is empty",
                    )
                )
            if item.modality != expected_modality:
                violations.append(
                    Violation(
                        code="modality",
                        location=f"flows/{topic_id}/{item.id}",
                        message=f"modality {item.modality.value} does not match variant {bench.variant.value}",
                    )
                )
        if topic_id not in questionnaire_topics:
            violations.append(
                Violation(
                    code="orphan_flow",
                    location=f"flows/{topic_id}",
                    message="no questionnaire for this topic",
                )
            )

    for questionnaire in bench.questionnaires:
        if questionnaire.topic_id not in bench.flows:
            violations.append(
                Violation(
                    code="missing_flow",
                    location=f"questionnaires/{questionnaire.topic_id}",
                    message="no information flow for this topic",
                )
            )

    for name, profile in bench.profiles.items():
        for key in profile.missing_keys:
            violations.append(
                Violation(
                    code="profile_key",
                    location=f"profiles/{name}",
                    message=f"missing canonical key {key!r}",
                )
            )
    return ValidationReport(violations=violations)
