"""
settings read from the environment (and a .env file when there is one)
"""

from typing import Optional, Callable, TypeVar
from dataclasses import dataclass, field as dc_field, replace
import logging
import os

import dotenv

from CodedTN.constants import EXHAUSTIVE_LIMIT, RANDOM_SUBSET_SAMPLES
from CodedTN.exceptions import ConfigError
from CodedTN.types import PathType

log = logging.getLogger(__name__)

ENV_PREFIX = "CODEDTN_"

T = TypeVar("T")


@dataclass(frozen=True)
class Settings:
    """
    the defaults of the command line, the flags override them

    Parameters:
    -----------
    field: Optional[str]
        the field selector ("f64", "c128", "gf" or "gf:<modulus>"), None keeps the field a spec declares
    threads: int
        the worker threads of the simulator
    seed: Optional[int]
        the seed every random choice derives from, None keeps the seed of the spec
    log_level: str
        the logging level name
    exhaustive_limit: int
        the largest number of failure subsets that is enumerated
    random_subsets: int
        the samples above the guard
    float_tolerance: float
        the relative error a floating point decode may have
    """

    field: Optional[str] = None
    threads: int = dc_field(default_factory=lambda: os.cpu_count() or 1)
    seed: Optional[int] = None
    log_level: str = "WARNING"
    exhaustive_limit: int = EXHAUSTIVE_LIMIT
    random_subsets: int = RANDOM_SUBSET_SAMPLES
    float_tolerance: float = 1e-6

    def with_overrides(self, **kwargs) -> "Settings":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _read(name: str, cast: Callable[[str], T], default: T) -> T:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError:
        raise ConfigError(f"{ENV_PREFIX + name}={raw!r} can not be parsed as {cast.__name__}")


def _positive(value: int, name: str) -> int:
    if value < 1:
        raise ConfigError(f"{ENV_PREFIX + name} must be positive, got {value}")
    return value


def load_settings(env_file: Optional[PathType] = None) -> Settings:
    """
    it loads a .env file (without overriding variables that are already set) and
    reads every CODEDTN_* variable
    :param env_file: the .env file, searched upwards from the working directory when omitted
    :return: Settings
    """
    if env_file is not None:
        dotenv.load_dotenv(env_file)
    else:
        found = dotenv.find_dotenv(usecwd=True)
        if found:
            dotenv.load_dotenv(found)
    defaults = Settings()
    level = _read("LOG_LEVEL", str, defaults.log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"{ENV_PREFIX}LOG_LEVEL={level!r} is not a logging level")
    settings = Settings(
        field=_read("FIELD", str, defaults.field),
        threads=_positive(_read("THREADS", int, defaults.threads), "THREADS"),
        seed=_read("SEED", int, defaults.seed),
        log_level=level,
        exhaustive_limit=_positive(_read("EXHAUSTIVE_LIMIT", int, defaults.exhaustive_limit), "EXHAUSTIVE_LIMIT"),
        random_subsets=_positive(_read("RANDOM_SUBSETS", int, defaults.random_subsets), "RANDOM_SUBSETS"),
        float_tolerance=_read("FLOAT_TOLERANCE", float, defaults.float_tolerance),
    )
    log.debug("loaded %s", settings)
    return settings


__all__ = ["ENV_PREFIX", "Settings", "load_settings"]
