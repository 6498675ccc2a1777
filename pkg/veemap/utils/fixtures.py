"""
Named generators and matrices from data/fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from veemap.engine.bowenfranks_engine import IntMatrix
from veemap.engine.subshift_engine import VertexShift
from veemap.engine.thompson_engine import ThompsonError, TwoVElement, VElement
from veemap.utils.config import DATA_DIR, ConfigError

FIXTURE_DIR = DATA_DIR / "fixtures"


@dataclass(frozen=True)
class GeneratorSet:
    """V and 2V generators by name, plus the relator words over the V names."""
    v: dict[str, VElement] = field(default_factory=dict, hash=False)
    two_v: dict[str, TwoVElement] = field(default_factory=dict, hash=False)
    relators: tuple[str, ...] = ()


def _load_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ConfigError(f"Fixture file not found: {path}")
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping")
    return data


def load_generators(path: Path | str | None = None) -> GeneratorSet:
    """
    Load generators.yaml.

    Raises:
        ConfigError: missing file, a generator name that is not a single
            lowercase letter, or a tree pair the engine rejects.
    """
    data = _load_yaml(Path(path) if path else FIXTURE_DIR / "generators.yaml")
    v: dict[str, VElement] = {}
    for name, entry in (data.get("v") or {}).items():
        if len(name) != 1 or not name.islower():
            raise ConfigError(f"V generator names must be single lowercase letters, got {name!r}")
        try:
            v[name] = VElement(tuple(entry["domain"]), tuple(entry["range"]))
        except (KeyError, ThompsonError) as exc:
            raise ConfigError(f"Bad V generator {name!r}: {exc}") from exc
    two_v: dict[str, TwoVElement] = {}
    for name, entry in (data.get("two_v") or {}).items():
        try:
            two_v[name] = TwoVElement(
                tuple(tuple(r) for r in entry["domain"]),
                tuple(tuple(r) for r in entry["range"]),
            )
        except (KeyError, ThompsonError) as exc:
            raise ConfigError(f"Bad 2V generator {name!r}: {exc}") from exc
    return GeneratorSet(v, two_v, tuple(data.get("relators") or ()))


def load_matrices(path: Path | str | None = None) -> dict[str, VertexShift]:
    data = _load_yaml(Path(path) if path else FIXTURE_DIR / "matrices.yaml")
    return {
        name: VertexShift.from_rows(entry["symbols"], entry["matrix"])
        for name, entry in data.items()
    }


def shift_matrix(v: VertexShift) -> IntMatrix:
    return IntMatrix(tuple(tuple(int(x) for x in row) for row in v.matrix))
