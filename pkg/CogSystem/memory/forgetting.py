import math
from fractions import Fraction
from loguru import logger
from CogSystem.prompts import KnowledgeDraft

FORGET_FRACTION = Fraction(2, 5)


def forget_count(n: int, fraction: Fraction = FORGET_FRACTION) -> int:
    """Number of drafts forgotten out of `n`: `floor(fraction * n)`."""
    return math.floor(fraction * n)


def commit_knowledge(
    drafts: list[KnowledgeDraft], fraction: Fraction = FORGET_FRACTION
) -> tuple[list[KnowledgeDraft], list[KnowledgeDraft]]:
    """Forget the lowest-scored share of freshly distilled knowledge.

    The dropped drafts are the first `floor(fraction * n)` by (score, draft position), so among equal scores
    the earlier draft goes first.

    Args:
        `drafts` (`list[KnowledgeDraft]`): Validated drafts in reply order.
        `fraction` (`Fraction`, optional): Share to forget. Defaults to `2/5`.
    Returns:
        `tuple[list[KnowledgeDraft], list[KnowledgeDraft]]`: Retained and dropped drafts, both in draft order.
    """
    d = forget_count(len(drafts), fraction)
    order = sorted(range(len(drafts)), key=lambda i: (drafts[i].score, i))
    dropped_idx = set(order[:d])
    retained = [draft for i, draft in enumerate(drafts) if i not in dropped_idx]
    dropped = [draft for i, draft in enumerate(drafts) if i in dropped_idx]
    logger.debug(
        f"Forgetting {d} of {len(drafts)} drafts (scores {[draft.score for draft in dropped]})"
    )
    return retained, dropped
