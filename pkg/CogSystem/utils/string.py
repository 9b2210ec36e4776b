import re
import hashlib

_WHITESPACE = re.compile(r"\s+")


def word_count(text: str) -> int:
    """Count whitespace-delimited tokens in `text`."""
    return len(text.split())


def collapse_whitespace(text: str) -> str:
    return _WHITESPACE.sub(" ", text).strip()


def digest(text: str) -> str:
    """SHA-256 hex digest of the UTF-8 bytes of `text`."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def format_memory(statements: list[str]) -> str:
    """Format recalled statements as a memory block. Each statement becomes a `- ` line.

    Args:
        `statements` (`list[str]`): Recalled knowledge statements.
    Returns:
        `str`: The memory block, or the literal `None` when nothing was recalled.
    """
    if not statements:
        return "None"
    return "\n".join(f"- {statement}" for statement in statements)


def format_information(texts: list[str]) -> str:
    """Join perceived texts into one block separated by blank lines. Returns `None` for an empty batch."""
    if not texts:
        return "None"
    return "\n\n".join(texts)


def first_line(text: str) -> str:
    """Return the first non-empty line of `text`, stripped."""
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    return ""


def natural_key(name: str) -> tuple:
    """Sort key that orders embedded numbers numerically (`2.json` before `10.json`)."""
    return tuple(
        (0, int(part), "") if part.isdigit() else (1, 0, part.lower())
        for part in re.split(r"(\d+)", name)
        if part
    )
