from typing import Optional


class CogError(Exception):
    """Base class of every error raised by the package."""


class ConfigError(CogError):
    """Invalid or missing configuration (exit status 2 on the command line)."""


# Benchmark data


class BenchmarkError(CogError):
    pass


class BenchmarkNotFoundError(BenchmarkError):
    pass


class BenchmarkSchemaError(BenchmarkError):
    """A benchmark file violates the schema.

    Args:
        `message` (`str`): What is wrong.
        `file` (`Optional[str]`): The offending file. Defaults to `None`.
        `pointer` (`str`): JSON pointer into the file. Defaults to `''` (the whole document).
    """

    def __init__(self, message: str, file: Optional[str] = None, pointer: str = "") -> None:
        self.file = file
        self.pointer = pointer
        location = f"{file}#{pointer or '/'}" if file is not None else pointer
        super().__init__(f"{location}: {message}" if location else message)


class PlanError(BenchmarkError):
    pass


# Providers


class ProviderError(CogError):
    pass


class TransportError(ProviderError):
    pass


class ProviderStatusError(ProviderError):
    def __init__(self, status_code: int, message: str = "") -> None:
        self.status_code = status_code
        super().__init__(f"HTTP {status_code}: {message}" if message else f"HTTP {status_code}")


class MalformedResponseError(ProviderError):
    pass


class DimensionMismatchError(ProviderError):
    def __init__(self, expected: int, actual: int) -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(f"Embedding dimension mismatch: expected {expected}, got {actual}")


class TranscriptError(ProviderError):
    pass


class TranscriptExhaustedError(TranscriptError):
    pass


class TranscriptMismatchError(TranscriptError):
    def __init__(self, index: int, expect: str) -> None:
        self.index = index
        self.expect = expect
        super().__init__(
            f"Transcript entry {index} expects the prompt to contain {expect!r}"
        )


# Prompts


class PromptError(CogError):
    pass


class UnknownTemplateError(PromptError):
    pass


class MissingBindingError(PromptError):
    def __init__(self, placeholder: str, template_id: str = "") -> None:
        self.placeholder = placeholder
        super().__init__(
            f"Missing binding for placeholder {{{placeholder}}}"
            + (f" in template {template_id}" if template_id else "")
        )


class TemplateIntegrityError(PromptError):
    pass


# Parsing


class ParseError(CogError):
    pass


class ProfileParseError(ParseError):
    pass


class KnowledgeParseError(ParseError):
    def __init__(self, message: str, index: Optional[int] = None) -> None:
        self.index = index
        super().__init__(f"element {index}: {message}" if index is not None else message)


class InterpretationParseError(ParseError):
    pass


class OpinionParseError(ParseError):
    pass


# Memory and agents


class MemoryStateError(CogError):
    pass


class AgentError(CogError):
    pass


class IterationAbortedError(AgentError):
    def __init__(self, iteration: int, diagnostic: str) -> None:
        self.iteration = iteration
        self.diagnostic = diagnostic
        super().__init__(f"Iteration {iteration} aborted: {diagnostic}")


# Evaluation and benchmark construction


class MetricError(CogError):
    pass


class UndefinedMetricError(MetricError):
    pass


class EvaluationError(CogError):
    pass


class ReviewSheetError(CogError):
    pass


class ProfileGenerationError(CogError):
    pass
