import os
import sys
import random
import numpy as np
from typing import Optional
from loguru import logger
from CogSystem.errors import ConfigError


def init_logger(
    command: str, level: str = "INFO", log_dir: Optional[str] = "logs"
) -> None:
    """Configure the loguru sinks for a command-line invocation.

    Args:
        `command` (`str`): The sub-command name, used in the log file name.
        `level` (`str`, optional): Level of the stderr sink. Defaults to `INFO`.
        `log_dir` (`Optional[str]`, optional): Directory of the DEBUG file sink. `None` disables the file sink. Defaults to `logs`.
    """
    logger.remove()
    logger.add(sys.stderr, level=level.upper())
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        logger.add(
            os.path.join(log_dir, command + "_{time:YYYY-MM-DD:HH:mm:ss}.log"),
            level="DEBUG",
        )


def init_all_seeds(seed: int = 0) -> None:
    """Initialize all seeds.

    Args:
        `seed` (`int`, optional): Random seed. Defaults to `0`.
    """
    random.seed(seed)
    np.random.seed(seed)


def read_api_key(api_key_env: str) -> str:
    """Read the API credential from the environment variable named `api_key_env`.

    Args:
        `api_key_env` (`str`): Name of the environment variable holding the key.
    Raises:
        `ConfigError`: The variable is unset or empty.
    Returns:
        `str`: The credential. Never log it.
    """
    key = os.environ.get(api_key_env, "").strip()
    if not key:
        raise ConfigError(f"Environment variable {api_key_env} is not set")
    logger.debug(f"Using API key from ${api_key_env}")
    return key
