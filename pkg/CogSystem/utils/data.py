import os
import json
import tempfile
from typing import Any, Iterable


def read_json(path: str) -> Any:
    """
    Read a JSON file and return its content.

    Args:
        `path` (`str`): The path to the JSON file.

    Returns:
        `Any`: The decoded JSON document.
    """
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def read_jsonl(path: str) -> list[dict]:
    """
    Read a JSON Lines file. Blank lines are skipped.

    Args:
        `path` (`str`): The path to the JSON Lines file.

    Returns:
        `list[dict]`: One decoded object per non-blank line.
    """
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                records.append(json.loads(line))
    return records


def dumps_json(data: Any) -> str:
    """Serialize `data` the same way every time (2-space indent, UTF-8 kept, trailing newline)."""
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """
    Write text to `path` through a temporary file in the same directory followed by a rename,
    so readers never see a half-written file.

    Args:
        `path` (`str`): Destination path. Parent directories are created.
        `text` (`str`): The content.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_json(path: str, data: Any) -> None:
    write_text_atomic(path, dumps_json(data))


def write_jsonl(path: str, records: Iterable[dict]) -> None:
    lines = [json.dumps(record, ensure_ascii=False) + "\n" for record in records]
    write_text_atomic(path, "".join(lines))


def append_jsonl(path: str, records: Iterable[dict]) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "a", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
