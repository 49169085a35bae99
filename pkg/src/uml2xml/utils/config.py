"""
Configuration utilities.
"""

import os
import re
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator

ENV_PREFIX = "UML2XML_"
CONFIG_SECTION = "converter"

_PLACEHOLDER = re.compile(r"^\$\{([A-Za-z_][A-Za-z0-9_]*)\}$")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}
_LOG_LEVELS = {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}


class ConverterConfig(BaseModel):
    """Settings shared by the CLI, the pipeline and the HTTP service."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    strict: bool = True
    xml_declaration: bool = True
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        level = value.strip().upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"unknown log level {value!r}")
        return level


def _parse_bool(name: str, value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"{name} must be a boolean, got {value!r}")


def _substitute_env(settings: Dict[str, Any]) -> Dict[str, Any]:
    """Replace `${VAR}` string values with the environment value."""
    resolved: Dict[str, Any] = {}
    for key, value in settings.items():
        if isinstance(value, str):
            match = _PLACEHOLDER.match(value)
            if match:
                env_value = os.getenv(match.group(1))
                if env_value is None:
                    logger.warning(f"Environment variable not found: {match.group(1)}")
                    continue
                value = env_value
        resolved[key] = value
    return resolved


def env_overrides() -> Dict[str, Any]:
    """Settings present in the environment, by field name."""
    overrides: Dict[str, Any] = {}
    for field in ConverterConfig.model_fields:
        name = f"{ENV_PREFIX}{field.upper()}"
        value = os.getenv(name)
        if value is None:
            continue
        if field == "log_level":
            overrides[field] = value
        else:
            overrides[field] = _parse_bool(name, value)
    return overrides


def load_config_from_env(env_file: Optional[str] = ".env") -> ConverterConfig:
    """Load configuration from environment variables, after reading an optional .env file."""
    if env_file:
        load_dotenv(env_file)
    return ConverterConfig(**env_overrides())


def load_config_from_file(file_path: str) -> ConverterConfig:
    """
    Load configuration from the `converter:` section of a YAML file.

    Raises:
        FileNotFoundError: the file does not exist.
        OSError: the file cannot be read.
        ValueError: invalid YAML, or the section is malformed or holds
            unknown keys.
    """
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"Configuration file not found: {file_path}")

    with open(file_path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in configuration file {file_path}: {e}") from e

    if not isinstance(data, dict):
        raise ValueError(f"Invalid configuration file {file_path}: expected a mapping")
    section = data.get(CONFIG_SECTION, {}) or {}
    if not isinstance(section, dict):
        raise ValueError(f"Invalid configuration file {file_path}: '{CONFIG_SECTION}' must be a mapping")

    settings = _substitute_env(section)
    for field in ("strict", "xml_declaration"):
        if isinstance(settings.get(field), str):
            settings[field] = _parse_bool(field, settings[field])
    logger.debug(f"Loaded converter settings from {file_path}: {settings}")
    return ConverterConfig(**settings)


def resolve_config(config_file: Optional[str] = None, env_file: Optional[str] = ".env") -> ConverterConfig:
    """Environment settings overlaid with those a config file sets explicitly."""
    config = load_config_from_env(env_file)
    if config_file is None:
        return config
    from_file = load_config_from_file(config_file)
    return config.model_copy(update=from_file.model_dump(exclude_unset=True))
