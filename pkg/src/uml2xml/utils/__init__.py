"""
Utility functions and classes.
"""

from .config import ConverterConfig, load_config_from_env, load_config_from_file, resolve_config
from .metrics import StageMetrics

__all__ = ["ConverterConfig", "load_config_from_env", "load_config_from_file", "resolve_config", "StageMetrics"]
