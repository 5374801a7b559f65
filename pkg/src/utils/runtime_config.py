import os
from typing import Any

import toml
from pydantic import BaseModel, ConfigDict, Field

from src.models.errors import InvalidArguments

CONFIG_PATH: str = "local_config/config.toml"
THREADS_ENV_VAR: str = "TLDKIT_THREADS"


class RuntimeConfig(BaseModel):
    """[runtime] and [verification] sections of local_config/config.toml"""

    threads: int = Field(default=0, ge=0)
    log_level: str = "WARNING"
    log_to_file: bool = False
    log_file: str = "tldkit.logs"
    associativity_samples: int = Field(default=200, ge=0)
    random_seed: int = 20240607
    default_max_n: int = Field(default=6, ge=2)
    model_config = ConfigDict(frozen=True)

    @property
    def worker_count(self) -> int:
        """threads, with 0 meaning one worker per CPU"""
        return self.threads or os.cpu_count() or 1


def load_runtime_config(path: str = CONFIG_PATH) -> RuntimeConfig:
    """
    Reads the config file when present (defaults otherwise); a
    TLDKIT_THREADS environment variable overrides [runtime].threads
    """
    config: dict[str, Any] = toml.load(path) if os.path.exists(path) else {}
    runtime: RuntimeConfig = runtime_config_from_config_dict(config)
    threads: int | None = resolve_thread_count_from_env_vars()
    if threads is not None:
        runtime = runtime.model_copy(update={"threads": threads})
    return runtime


def resolve_thread_count_from_env_vars() -> int | None:
    raw: str = os.getenv(THREADS_ENV_VAR, "").strip()
    if not raw:
        return None
    return _parse_thread_count(raw)


def runtime_config_from_config_dict(config: dict[str, Any]) -> RuntimeConfig:
    runtime: dict[str, Any] = config.get("runtime", {})
    verification: dict[str, Any] = config.get("verification", {})
    return RuntimeConfig(**runtime, **verification)


def _parse_thread_count(raw: str) -> int:
    try:
        threads: int = int(raw)
    except ValueError:
        raise InvalidArguments(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    if threads < 0:
        raise InvalidArguments(f"{THREADS_ENV_VAR} must be non-negative, got {threads}")
    return threads
