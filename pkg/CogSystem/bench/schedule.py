from loguru import logger
from CogSystem.bench.schema import (
    BATCH_SIZE,
    CANONICAL_ITERATIONS,
    BenchmarkSet,
    IterationPlan,
)
from CogSystem.errors import PlanError


def plan_iterations(bench: BenchmarkSet, topic_id: str, strict: bool = True) -> IterationPlan:
    """
    Split a topic's information flow into per-iteration batches: one article per iteration for variant `a`,
    ten video texts for variant `v`, in corpus order.

    Args:
        `bench` (`BenchmarkSet`): The loaded benchmark.
        `topic_id` (`str`): The topic to schedule.
        `strict` (`bool`, optional): Require full batches and exactly ten iterations. Defaults to `True`.
    Raises:
        `PlanError`: The topic does not exist, or strict mode and the flow does not fill exactly ten full batches.
    Returns:
        `IterationPlan`: The batches of item ids. Without `strict` the final batch may be short.
    """
    if topic_id not in bench.flows:
        raise PlanError(f"Topic {topic_id!r} has no information flow")
    ids = [item.id for item in bench.flows[topic_id]]
    size = BATCH_SIZE[bench.variant]
    if strict:
        expected = size * CANONICAL_ITERATIONS
        if len(ids) != expected:
            raise PlanError(
                f"Topic {topic_id!r} has {len(ids)} flows; strict variant "
                f"{bench.variant.value} needs exactly {expected} "
                f"({CANONICAL_ITERATIONS} iterations of {size})"
            )
    batches = [ids[i : i + size] for i in range(0, len(ids), size)]
    if batches and len(batches[-1]) < size:
        logger.warning(
            f"Topic {topic_id!r}: final batch holds {len(batches[-1])} of {size} items"
        )
    return IterationPlan(topic_id=topic_id, iterations=batches)
