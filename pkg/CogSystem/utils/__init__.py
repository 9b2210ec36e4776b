from CogSystem.utils.data import (
    read_json,
    read_jsonl,
    dumps_json,
    write_json,
    write_jsonl,
    append_jsonl,
    write_text_atomic,
)
from CogSystem.utils.init import init_logger, init_all_seeds, read_api_key
from CogSystem.utils.prompts import read_prompts
from CogSystem.utils.string import (
    word_count,
    collapse_whitespace,
    digest,
    format_memory,
    format_information,
    first_line,
    natural_key,
)
