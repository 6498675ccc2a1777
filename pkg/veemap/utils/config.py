"""
Run configuration loaded from data/config.yaml.

Precedence, highest first: explicit overrides (CLI flags), the VEEMAP_SEED
environment variable (seed only), the YAML file, the dataclass defaults.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent.parent / "data"
CONFIG_PATH = DATA_DIR / "config.yaml"
SEED_ENV = "VEEMAP_SEED"


class ConfigError(Exception):
    """Exception raised for invalid configuration values."""
    pass


@dataclass(frozen=True)
class RunConfig:
    """Bounds and seed for the randomized sweeps."""
    seed: int = 2024
    max_len: int = 12
    max_depth: int = 4
    element_count: int = 20
    pair_count: int = 10
    pair_depth: int = 3
    pair_max_len: int = 8
    embedding_max_len: int = 6
    relator_count: int = 50
    relator_length: int = 8
    orbit_count: int = 20
    orbit_blocks: int = 3
    max_tiles: int = 8

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{f.name} must be an integer, got {value!r}")
            if f.name != "seed" and value <= 0:
                raise ConfigError(f"{f.name} must be positive, got {value}")

    def with_overrides(self, overrides: Mapping[str, Any]) -> RunConfig:
        """Copy with the non-None entries of overrides applied."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _seed_from_env(environ: Mapping[str, str]) -> int | None:
    raw = environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


def load_config(
    path: Path | str | None = None,
    overrides: Mapping[str, Any] | None = None,
    environ: Mapping[str, str] | None = None,
) -> RunConfig:
    """
    Build a RunConfig from YAML, environment and explicit overrides.

    Args:
        path: YAML file; defaults to data/config.yaml. A missing file means defaults.
        overrides: Values that win over everything else (None entries are skipped).
        environ: Environment mapping; defaults to os.environ.

    Returns:
        The validated configuration.

    Raises:
        ConfigError: unreadable YAML, unknown keys or invalid values.
    """
    path = Path(path) if path is not None else CONFIG_PATH
    environ = os.environ if environ is None else environ

    data: dict[str, Any] = {}
    if path.exists():
        with open(path, "r") as f:
            try:
                loaded = yaml.safe_load(f)
            except yaml.YAMLError as exc:
                raise ConfigError(f"Cannot parse {path}: {exc}") from exc
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigError(f"{path} must hold a mapping")
        data = dict(loaded or {})
    else:
        logger.debug("No config file at %s, using defaults", path)

    config = RunConfig().with_overrides(data)
    env_seed = _seed_from_env(environ)
    if env_seed is not None:
        config = replace(config, seed=env_seed)
    if overrides:
        config = config.with_overrides(overrides)
    logger.debug("Run config: %s", config)
    return config
