"""Tests for generator words and the seeded sweeps."""

from __future__ import annotations

import random

import pytest

from veemap.engine.sweep_engine import (
    SweepEngine,
    SweepError,
    format_word,
    inverse_word,
    parse_generator_word,
)
from veemap.utils.config import RunConfig

SMALL = RunConfig(
    seed=5,
    max_len=8,
    max_depth=3,
    element_count=3,
    pair_count=2,
    pair_depth=2,
    pair_max_len=5,
    embedding_max_len=4,
    relator_count=4,
    relator_length=6,
    orbit_count=3,
)


@pytest.fixture(scope="module")
def engine(generators):
    return SweepEngine(SMALL, generators)


def test_parse_generator_word():
    expected = [("t", False), ("u", False), ("t", True), ("u", True)]
    assert parse_generator_word("t u T U") == expected
    assert parse_generator_word("tuTU") == expected
    assert format_word(expected) == "t u T U"
    assert inverse_word(expected) == [("u", False), ("t", False), ("u", True), ("t", True)]
    with pytest.raises(SweepError):
        parse_generator_word("t2")


def test_element_of_a_word(engine):
    assert engine.element(parse_generator_word("c c c")).is_identity()
    assert engine.element(parse_generator_word("s t s U")).is_identity()
    assert not engine.element(parse_generator_word("s t")).is_identity()
    with pytest.raises(SweepError):
        engine.element(parse_generator_word("x"))


def test_relator_words_are_identities(engine):
    words = engine.relator_words()
    assert len(words) == SMALL.relator_count
    for text in words:
        letters = parse_generator_word(text)
        assert len(letters) <= SMALL.relator_length
        assert engine.element(letters).is_identity()


def test_relator_words_depend_only_on_the_seed(generators):
    first = SweepEngine(SMALL, generators).relator_words(10, 8)
    second = SweepEngine(SMALL, generators).relator_words(10, 8)
    assert first == second


def test_relators_come_from_the_fixture(engine):
    assert "a A" in engine.relators
    assert "c c c" in engine.relators
    for text in engine.relators:
        assert engine.element(parse_generator_word(text)).is_identity()


def test_relators_over_unknown_generators_are_dropped(generators):
    engine = SweepEngine(SMALL, generators, relators=["z z", "c c c"])
    assert engine.relators == ("c c c",)
    words = engine.relator_words(6, 7)
    assert all(engine.element(parse_generator_word(w)).is_identity() for w in words)


def test_random_orbits_are_admissible(engine):
    rng = random.Random(3)
    for _ in range(50):
        o = engine.random_orbit(rng)
        assert o.symbols[0] == "#"
        assert len(o.tiles) <= SMALL.max_tiles
        assert engine.hull.first_forbidden(o.symbols, circular=True) is None


def test_induced_maps_are_cached(engine):
    assert engine.induced_map("a").rule is engine.induced_map("a").rule
    assert engine.induced_map("a", inverted=True).rule is not engine.induced_map("a").rule


@pytest.mark.parametrize(
    "sweep", ["veelike_sweep", "pair_sweep", "embedding_sweep", "relator_sweep", "marker_sweep"]
)
def test_small_sweeps_pass(engine, sweep):
    result = getattr(engine, sweep)()
    assert result.passed, result.failures
    assert result.checked > 0


def test_relator_sweep_rejects_non_identity_words(engine):
    result = engine.relator_sweep(["s", "s s"])
    assert not result.passed
    assert result.failures == [{"word": "s", "reason": "does not reduce to the identity"}]


def test_marker_sweep_reports_a_short_search(engine):
    result = engine.marker_sweep(max_len=5)
    assert not result.passed
    assert result.failures == [{"reason": "no marker words up to length 5"}]


def test_run_all_names(engine):
    assert list(engine.run_all()) == ["veelike", "pair", "embedding", "relators", "markers"]
