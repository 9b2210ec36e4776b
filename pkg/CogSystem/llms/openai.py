import time
import threading
import openai
from typing import Any, Callable, TypeVar
from loguru import logger
from langchain.schema import HumanMessage
from langchain_openai import ChatOpenAI, OpenAIEmbeddings
from CogSystem.errors import (
    MalformedResponseError,
    ProviderError,
    ProviderStatusError,
    TransportError,
)
from CogSystem.llms.basellm import (
    BaseLLM,
    CompletionResult,
    EmbeddingVector,
    PromptRequest,
    ProviderKind,
)
from CogSystem.llms.config import ProviderConfig
from CogSystem.utils import read_api_key

T = TypeVar("T")


class AnyOpenAILLM(BaseLLM):
    def __init__(
        self,
        config: ProviderConfig,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        """Initialize the live client for any endpoint speaking the chat-completions / embeddings wire shape.

        Args:
            `config` (`ProviderConfig`): Endpoint, models, embedding dimension, retry and rate-limit settings.
            `sleep` (`Callable[[float], None]`, optional): Sleep function used for backoff and throttling. Defaults to `time.sleep`.
        """
        self.config = config
        self.model_name = config.model
        self.embedding_dim = config.embedding_dim
        self.kind = ProviderKind.LIVE
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_slot = 0.0
        api_key = read_api_key(config.api_key_env)
        # Retries are handled here, with our own backoff schedule.
        self.model = ChatOpenAI(
            model=config.model,
            base_url=config.endpoint,
            api_key=api_key,
            temperature=0,
            max_retries=0,
            timeout=config.timeout,
        )
        self.embedder = OpenAIEmbeddings(
            model=config.embedding_model,
            base_url=config.endpoint,
            api_key=api_key,
            max_retries=0,
            timeout=config.timeout,
            check_embedding_ctx_length=False,
        )

    def _throttle(self) -> None:
        if self.config.rate_limit <= 0:
            return
        interval = 1.0 / self.config.rate_limit
        with self._lock:
            now = time.monotonic()
            wait = self._next_slot - now
            self._next_slot = max(now, self._next_slot) + interval
        if wait > 0:
            self._sleep(wait)

    def _with_retries(self, call: Callable[[], T], what: str) -> T:
        delay = self.config.backoff_base
        for attempt in range(self.config.max_retries + 1):
            self._throttle()
            try:
                return call()
            except openai.APIConnectionError as e:
                if attempt == self.config.max_retries:
                    raise TransportError(
                        f"{what} failed after {attempt + 1} attempts: {e}"
                    ) from e
                logger.warning(
                    f"{what}: transport failure ({e}); retry {attempt + 1}/{self.config.max_retries} in {delay:g}s"
                )
                self._sleep(delay)
                delay *= 2
            except openai.APIStatusError as e:
                raise ProviderStatusError(e.status_code, str(e.message)) from e
            except openai.APIError as e:
                raise MalformedResponseError(f"{what}: {e}") from e
            except ProviderError:
                raise
            except (KeyError, IndexError, TypeError, ValueError, AttributeError) as e:
                raise MalformedResponseError(f"{what}: malformed response body ({e})") from e
        raise AssertionError("unreachable")

    def complete(self, req: PromptRequest) -> CompletionResult:
        """Forward pass of the live LLM.

        Args:
            `req` (`PromptRequest`): The prompt; sent as a single user message at `req.temperature`.
        Raises:
            `TransportError`: Transport failures persisted past `max_retries`.
            `ProviderStatusError`: Non-success HTTP status.
            `MalformedResponseError`: The body has no usable `choices[0].message.content`.
        Returns:
            `CompletionResult`: The model text, not trimmed.
        """

        def call() -> str:
            message = self.model.invoke(
                [HumanMessage(content=req.text)], temperature=req.temperature
            )
            if not isinstance(message.content, str):
                raise MalformedResponseError("completion content is not text")
            return message.content

        text = self._with_retries(call, f"completion {req.template_id}")
        return CompletionResult(text=text, provider=ProviderKind.LIVE)

    def embed(self, text: str) -> EmbeddingVector:
        """Embed `text` through the embeddings endpoint (`data[0].embedding`).

        Raises:
            `DimensionMismatchError`: The endpoint returned a vector of another dimension.
        """
        self._check_text(text)

        def call() -> Any:
            return self.embedder.embed_query(text)

        values = self._with_retries(call, "embedding")
        return EmbeddingVector(values, self.embedding_dim)
