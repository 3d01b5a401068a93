"""Layered run configuration: flags over MODHEAT_* environment over a key = value file over defaults."""

import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values

from ..core.config import RunConfig
from ..core.errors import ArgumentError

ENV_PREFIX = "MODHEAT_"
LIST_FIELDS = ("t_values", "primes")


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def _coerce(key: str, value: Any) -> Any:
    """Split comma-separated list values; pydantic converts the rest."""
    if key in LIST_FIELDS and isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def _known(key: str, source: str) -> str:
    if key not in RunConfig.model_fields:
        raise ArgumentError(f"unknown configuration key {key!r} in {source}", details={"key": key})
    return key


def read_config_file(path: str) -> Dict[str, Any]:
    """
    Read a flat ``key = value`` file; ``#`` starts a comment.

    Raises:
        ArgumentError: If the file is missing or names an unknown key
    """
    file = Path(path)
    if not file.is_file():
        raise ArgumentError(f"config file not found: {path}")
    values = {}
    for key, value in dotenv_values(file).items():
        name = _known(_normalize_key(key), path)
        if value is not None:
            values[name] = _coerce(name, value)
    return values


def read_environment(environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    """Collect ``MODHEAT_<FIELD>`` overrides; unrelated MODHEAT_ variables are ignored."""
    environ = os.environ if environ is None else environ
    values = {}
    for key, value in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = _normalize_key(key[len(ENV_PREFIX):])
        if name in RunConfig.model_fields:
            values[name] = _coerce(name, value)
    return values


def load_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_file: Optional[str] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Merge configuration sources.

    Args:
        flags: Command-line values; None entries are treated as unset
        config_file: Optional path to a key = value file
        environ: Environment mapping (default: os.environ)

    Returns:
        Validated RunConfig

    Raises:
        ArgumentError: If the file is missing or has unknown keys
        pydantic.ValidationError: If a merged value is invalid
    """
    merged: Dict[str, Any] = {}
    if config_file:
        merged.update(read_config_file(config_file))
    merged.update(read_environment(environ))
    for key, value in (flags or {}).items():
        if value is not None:
            name = _known(_normalize_key(key), "command-line flags")
            merged[name] = _coerce(name, value)
    return RunConfig(**merged)
