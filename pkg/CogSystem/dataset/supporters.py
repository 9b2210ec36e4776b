from typing import Iterable
from pydantic import BaseModel, ConfigDict, Field
from CogSystem.prompts import OpinionSet
from CogSystem.utils import collapse_whitespace


class SupporterRank(BaseModel):
    model_config = ConfigDict(frozen=True)

    supporter: str
    mentions: int = Field(ge=1)
    rank: int = Field(ge=1)


def normalize_supporter(name: str) -> str:
    return collapse_whitespace(name).lower()


def rank_supporters(sets: Iterable[OpinionSet]) -> list[SupporterRank]:
    """Rank supporters by how often they are mentioned across all opinion entries.

    Names are trimmed, lower-cased and whitespace-collapsed before counting. Ranks run 1, 2, 3, ... by
    descending mentions; equal counts keep the order of first appearance.

    Args:
        `sets` (`Iterable[OpinionSet]`): Opinion sets, usually one per topic.
    Returns:
        `list[SupporterRank]`: The ranking, best first.
    """
    counts: dict[str, int] = {}
    for opinions in sets:
        for entry in opinions.entries:
            for supporter in entry.supporters:
                name = normalize_supporter(supporter)
                if name:
                    counts[name] = counts.get(name, 0) + 1
    # sorted() is stable, so dict insertion order settles ties.
    ordered = sorted(counts.items(), key=lambda item: -item[1])
    return [
        SupporterRank(supporter=name, mentions=mentions, rank=rank)
        for rank, (name, mentions) in enumerate(ordered, start=1)
    ]
