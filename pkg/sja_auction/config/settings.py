"""Runtime settings loaded from the environment or a JSON file."""

import json
import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .constants import (
    CHUNK_SIZE_ENV_VAR,
    DEFAULT_CHUNK_SIZE,
    DEFAULT_SAMPLES,
    LOG_LEVEL_ENV_VAR,
    MAX_ORDER_ENV_VAR,
    MAX_RECURSION_ORDER,
    SETTINGS_FILE_ENV_VAR,
    SETTINGS_JSON_ENV_VAR,
    THREADS_ENV_VAR,
)

logger = logging.getLogger(__name__)

_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


class SJASettings(BaseModel):
    """Tunable runtime knobs; ``threads`` never changes a result."""

    model_config = ConfigDict(extra="ignore")

    threads: int = Field(default=1, ge=1, description="Monte-Carlo worker cap")
    chunk_size: int = Field(default=DEFAULT_CHUNK_SIZE, ge=1, description="Samples per MC chunk")
    log_level: str = Field(default="WARNING", description="Root log level for the CLI")
    max_order: int = Field(default=MAX_RECURSION_ORDER, ge=1, description="Volume recursion cap")
    default_samples: int = Field(default=DEFAULT_SAMPLES, ge=1)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"log_level must be one of {sorted(_LOG_LEVELS)}")
        return level


def _load_settings_document() -> Dict[str, Any]:
    """
    Load a settings document.

    Priority order:
    1. SJA_SETTINGS_JSON environment variable (JSON string)
    2. SJA_SETTINGS_FILE environment variable (path to JSON file)
    3. ~/.sja/settings.json (if exists)
    """
    json_str = os.getenv(SETTINGS_JSON_ENV_VAR)
    if json_str:
        try:
            document = json.loads(json_str)
            logger.info(f"Loaded {len(document)} settings from environment")
            return document
        except json.JSONDecodeError as e:
            logger.error(f"Failed to parse {SETTINGS_JSON_ENV_VAR}: {e}")

    file_path = os.getenv(SETTINGS_FILE_ENV_VAR)
    if file_path:
        try:
            with open(file_path, "r") as f:
                document = json.load(f)
            logger.info(f"Loaded {len(document)} settings from {file_path}")
            return document
        except (FileNotFoundError, json.JSONDecodeError) as e:
            logger.error(f"Failed to load settings from {file_path}: {e}")

    default_path = Path.home() / ".sja" / "settings.json"
    if default_path.exists():
        try:
            with open(default_path, "r") as f:
                document = json.load(f)
            logger.info(f"Loaded {len(document)} settings from {default_path}")
            return document
        except json.JSONDecodeError as e:
            logger.error(f"Failed to load settings from {default_path}: {e}")

    return {}


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return None


def load_settings() -> SJASettings:
    """
    Build settings from the settings document plus per-variable overrides.

    Individual variables (SJA_THREADS, SJA_CHUNK_SIZE, SJA_LOG_LEVEL,
    SJA_MAX_ORDER) win over the document. Invalid values are logged and
    the defaults kept.

    Returns:
        Validated SJASettings
    """
    document = dict(_load_settings_document())

    for key, env_name in (
        ("threads", THREADS_ENV_VAR),
        ("chunk_size", CHUNK_SIZE_ENV_VAR),
        ("max_order", MAX_ORDER_ENV_VAR),
    ):
        value = _env_int(env_name)
        if value is not None:
            document[key] = value

    level = os.getenv(LOG_LEVEL_ENV_VAR)
    if level:
        document["log_level"] = level

    try:
        return SJASettings(**document)
    except ValueError as e:
        logger.error(f"Invalid settings ignored: {e}")
        return SJASettings()


@lru_cache(maxsize=1)
def get_settings() -> SJASettings:
    """Settings for the current run, loaded on first use."""
    return load_settings()


def reset_settings():
    """Drop the cached settings so the next ``get_settings`` reloads them."""
    get_settings.cache_clear()
