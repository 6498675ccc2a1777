"""Shared fixtures."""

from __future__ import annotations

import pytest

from veemap.engine.lang_engine import rename, thompson_language
from veemap.engine.subshift_engine import HullSpec
from veemap.engine.thompson_engine import VElement
from veemap.utils.fixtures import load_generators


@pytest.fixture(scope="session")
def language():
    return thompson_language()


@pytest.fixture(scope="session")
def generators() -> dict[str, VElement]:
    return load_generators().v


@pytest.fixture(scope="session")
def swap(generators) -> VElement:
    return generators["s"]


@pytest.fixture(scope="session")
def pair_spec(language) -> HullSpec:
    left = rename(language, {"0": "0_A", "1": "1_A"})
    right = rename(language, {"0": "0_B", "1": "1_B"})
    return HullSpec(left, "#", right, "@")
