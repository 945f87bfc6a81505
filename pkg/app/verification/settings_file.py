"""Layered suite configuration: defaults, environment settings, YAML file, CLI overrides."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from ..config import settings
from ..errors import ConfigError, UnknownSuiteError
from .models import SUITES, SuiteConfig

logger = logging.getLogger(__name__)


def settings_layer() -> Dict[str, Any]:
    return {
        "step": settings.fd_step,
        "nested_step": settings.nested_fd_step,
        "seed": settings.default_seed,
        "out": settings.report_dir,
        "cache_dir": settings.coset_cache_dir,
    }


def read_config_file(path: str) -> Dict[str, Any]:
    """A flat mapping of SuiteConfig field names."""
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(config_path.read_text()) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"could not parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping, got {type(data).__name__}")
    unknown = set(data) - set(SuiteConfig.__fields__)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    return data


def build_suite_config(suite: str, config_path: Optional[str] = None,
                       overrides: Optional[Dict[str, Any]] = None) -> SuiteConfig:
    if suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite '{suite}', expected one of {', '.join(SUITES)}")
    values: Dict[str, Any] = settings_layer()
    if config_path:
        values.update(read_config_file(config_path))
        logger.debug(f"Loaded config file {config_path}")
    values.update({key: value for key, value in (overrides or {}).items() if value is not None})
    values["suite"] = suite
    try:
        return SuiteConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration for suite '{suite}': {e}") from e
