from typing import Optional

TOPIC_CATALOG: dict[str, tuple[str, ...]] = {
    "Entertainment": ("Gossip", "Movies & TV Shows", "Dating Sims", "Outdoor Adventures", "Horoscope & Divination"),
    "Culture": ("Religion", "War History", "Folktales", "Literary", "Anime & Manga"),
    "Education": ("Parent-child Education", "Professional Education", "School Education", "TED Talks", "Psychological Counseling"),
    "Economy": ("Entrepreneurship", "Financial Investment", "Loans", "Market Analysis", "Financial Figures"),
    "Health": ("Wellness", "Assisted Reproduction", "Fat Burning Training", "Yoga", "Oral Care"),
    "Technology": ("Digital Products", "Scientific Research", "Automobile News", "Virtual Reality", "Software Products"),
    "Society": ("Legal Events", "Unusual Events", "Acts of Kindness", "Military Conflicts", "Disasters & Accidents"),
    "Life": ("Pets", "Living Abroad", "Home Design & Renovation", "Rural life", "Food"),
    "Sports": ("Extreme Sports", "Winter Sports", "Fishing", "Ball Sports", "Combat Sports"),
    "Fashion": ("Beauty & Hairstyling", "Clothes", "Street Style", "Wedding", "Tattoos"),
}


def category_of(topic: str) -> Optional[str]:
    """Return the catalog category of `topic` (case-insensitive), or `None`."""
    wanted = topic.strip().lower()
    for category, topics in TOPIC_CATALOG.items():
        if any(t.lower() == wanted for t in topics):
            return category
    return None


def topics_of(category: str) -> tuple[str, ...]:
    for name, topics in TOPIC_CATALOG.items():
        if name.lower() == category.strip().lower():
            return topics
    raise KeyError(f"Unknown category {category!r}")
