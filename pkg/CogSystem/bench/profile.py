from typing import Iterable, Mapping, Optional

CANONICAL_KEYS: tuple[str, ...] = (
    "Name",
    "Gender",
    "Age",
    "Place of Birth",
    "Occupation",
    "Height",
    "Weight",
    "Distinguishing Marks",
    "Personality",
    "Hobbies",
    "Skills",
    "Dislikes",
    "Values",
    "Religious Beliefs",
    "Interpersonal Relationships",
    "Flaws",
    "External Environment",
    "Financial Status",
    "Family Background",
    "Educational Background",
    "Significant Experiences",
    "Future Outlook",
)

_LOOKUP = {" ".join(key.lower().split()): key for key in CANONICAL_KEYS}


def canonical_key(key: str) -> Optional[str]:
    """Match `key` against the canonical attribute names, ignoring case and spacing.

    Returns:
        `Optional[str]`: The canonical spelling, or `None` for a non-canonical key.
    """
    return _LOOKUP.get(" ".join(key.lower().split()))


class ProfileDoc:
    """
    The persona document. Always carries the 22 canonical attributes in canonical order (empty string when
    unknown); anything else lives in `extras`, in insertion order. `missing_keys` remembers which canonical
    keys were absent from the source mapping and takes no part in equality.
    """

    def __init__(
        self,
        attributes: Optional[Mapping[str, str]] = None,
        extras: Optional[Mapping[str, str]] = None,
        missing_keys: Iterable[str] = (),
    ) -> None:
        attributes = dict(attributes or {})
        self.attributes: dict[str, str] = {
            key: str(attributes.get(key, "")) for key in CANONICAL_KEYS
        }
        self.extras: dict[str, str] = {k: str(v) for k, v in (extras or {}).items()}
        self.missing_keys: tuple[str, ...] = tuple(missing_keys)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]) -> "ProfileDoc":
        """Build a profile from a `Key -> value` mapping. Canonical keys are matched case-insensitively.

        Args:
            `mapping` (`Mapping[str, object]`): Attribute map, e.g. a decoded profile file.
        Returns:
            `ProfileDoc`: The profile; absent canonical keys are empty and listed in `missing_keys`.
        """
        attributes: dict[str, str] = {}
        extras: dict[str, str] = {}
        for key, value in mapping.items():
            value = "" if value is None else str(value)
            canonical = canonical_key(key)
            if canonical is None:
                extras[key.strip()] = value
            else:
                attributes[canonical] = value
        missing = [key for key in CANONICAL_KEYS if key not in attributes]
        return cls(attributes, extras, missing)

    def to_dict(self) -> dict[str, str]:
        """Canonical attributes in canonical order followed by extras."""
        return {**self.attributes, **self.extras}

    def to_record(self) -> dict[str, str]:
        """Like `to_dict`, without the canonical keys listed in `missing_keys`."""
        missing = set(self.missing_keys)
        present = {key: value for key, value in self.attributes.items() if key not in missing}
        return {**present, **self.extras}

    def to_text(self) -> str:
        """Render as `Key: value` lines, the form used inside prompts."""
        return "\n".join(f"{key}: {value}" for key, value in self.to_dict().items())

    def copy(self) -> "ProfileDoc":
        return ProfileDoc(self.attributes, self.extras, self.missing_keys)

    def __getitem__(self, key: str) -> str:
        canonical = canonical_key(key)
        if canonical is not None:
            return self.attributes[canonical]
        return self.extras[key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProfileDoc):
            return NotImplemented
        return (
            self.attributes == other.attributes
            and list(self.extras.items()) == list(other.extras.items())
        )

    def __repr__(self) -> str:
        name = self.attributes.get("Name") or "?"
        return f"ProfileDoc(name={name!r}, extras={list(self.extras)})"
