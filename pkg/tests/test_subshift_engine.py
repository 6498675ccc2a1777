"""Tests for hull vertex shifts, refusals, mixing and the factor oracle."""

from __future__ import annotations

import pytest

from veemap.engine.lang_engine import Alphabet, compile_regex
from veemap.engine.subshift_engine import (
    HullRefusal,
    HullSpec,
    Sft,
    SubshiftError,
    VertexShift,
    build_hull,
    cross_validate_hull,
    essential_core,
    hull_vertex_shift,
    is_mixing,
    pair_hull_vertex_shift,
    primitivity_exponent,
    sft_from_bigrams,
    shift_language,
    to_dot,
    unused_symbols,
    vertex_from_sft,
)
from veemap.simulation import brute_force_mixing
from veemap.utils.fixtures import load_matrices

THOMPSON_HULL = ((1, 1, 0), (1, 1, 1), (1, 1, 1))

PAIR_SYMBOLS = ("0_A", "1_A", "@", "0_B", "1_B", "#")
PAIR_HULL = (
    (1, 1, 1, 0, 0, 0),
    (1, 1, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 1),
    (0, 0, 0, 1, 1, 0),
    (0, 0, 0, 1, 1, 1),
    (0, 1, 1, 0, 0, 0),
)


def test_thompson_hull(language):
    shift = hull_vertex_shift(HullSpec(language, "#"))
    assert shift.alphabet.symbols == ("0", "1", "#")
    assert shift.matrix == THOMPSON_HULL
    assert shift.allows("1", "#")
    assert not shift.allows("0", "#")


def test_pair_hull(pair_spec):
    shift = pair_hull_vertex_shift(pair_spec)
    assert shift.alphabet.symbols == PAIR_SYMBOLS
    assert shift.matrix == PAIR_HULL
    assert build_hull(pair_spec) == shift


def test_pair_hull_without_reversal(language):
    from veemap.engine.lang_engine import rename

    left = rename(language, {"0": "0_A", "1": "1_A"})
    right = rename(language, {"0": "0_B", "1": "1_B"})
    shift = build_hull(HullSpec(left, "#", right, "@", reverse_left=False))
    assert shift.allows("#", "0_A")
    assert not shift.allows("0_A", "@")
    assert shift.allows("1_A", "@")


def test_fixture_matrices_match_the_construction(language, pair_spec):
    matrices = load_matrices()
    assert matrices["thompson_hull"].matrix == THOMPSON_HULL
    assert matrices["pair_hull"].matrix == pair_hull_vertex_shift(pair_spec).matrix


def test_refusal_carries_a_witness():
    language = compile_regex("(00)*")
    with pytest.raises(HullRefusal) as info:
        hull_vertex_shift(HullSpec(language, "#"))
    refusal = info.value
    assert refusal.component == "single"
    accepted, rejected = refusal.witness
    assert language.accepts(accepted)
    assert not language.accepts(rejected)
    assert "not locally 2-testable" in str(refusal)


def test_pair_refusal_names_the_component(language):
    from veemap.engine.lang_engine import rename

    left = rename(language, {"0": "0_A", "1": "1_A"})
    right = rename(compile_regex("(00)*"), {"0": "0_B"})
    with pytest.raises(HullRefusal) as info:
        build_hull(HullSpec(left, "#", right, "@"))
    assert info.value.component == "right"


def test_locally_testable_language_with_period_two_is_accepted():
    shift = build_hull(HullSpec(compile_regex("(01)*"), "#"))
    assert shift.matrix == ((0, 1, 0), (1, 0, 1), (1, 0, 1))


def test_hull_spec_validation(language):
    with pytest.raises(SubshiftError):
        HullSpec(language, "0")
    with pytest.raises(SubshiftError):
        HullSpec(language, "#", right_language=language)
    with pytest.raises(SubshiftError):
        HullSpec(language, "#", language, "@")
    with pytest.raises(SubshiftError):
        hull_vertex_shift(HullSpec(language, "#", compile_regex("(ab)*"), "@"))


def test_pair_constructor_needs_a_pair_spec(language):
    with pytest.raises(SubshiftError):
        pair_hull_vertex_shift(HullSpec(language, "#"))


def test_vertex_shift_validation():
    with pytest.raises(SubshiftError):
        VertexShift.from_rows(("a", "b"), ((1, 1),))
    with pytest.raises(SubshiftError):
        VertexShift.from_rows(("a",), ((2,),))


def test_sft_round_trip_and_rejection():
    v = VertexShift.from_rows(("0", "1", "#"), THOMPSON_HULL)
    sft = sft_from_bigrams(v)
    assert sft.forbidden == frozenset({("0", "#")})
    assert vertex_from_sft(sft) == v
    with pytest.raises(SubshiftError):
        vertex_from_sft(Sft(Alphabet(("0", "1")), frozenset({("0", "1", "0")})))
    with pytest.raises(SubshiftError):
        Sft(Alphabet(("0",)), frozenset({("x",)}))


def test_first_forbidden():
    v = VertexShift.from_rows(("0", "1", "#"), THOMPSON_HULL)
    assert v.first_forbidden(("#", "1", "0", "#")) == ("0", "#")
    assert v.first_forbidden(("#", "1"), circular=True) is None
    assert v.first_forbidden(("#", "0"), circular=True) == ("0", "#")
    assert v.first_forbidden(()) is None


def test_primitivity_exponents(pair_spec):
    assert primitivity_exponent(VertexShift.from_rows(("0", "1", "#"), THOMPSON_HULL)) == 2
    assert primitivity_exponent(pair_hull_vertex_shift(pair_spec)) == 4
    assert primitivity_exponent(VertexShift.from_rows(("a", "b"), ((0, 1), (1, 0)))) is None
    assert primitivity_exponent(VertexShift.from_rows(("a", "b"), ((1, 1), (1, 0)))) == 2


@pytest.mark.parametrize(
    "rows",
    [
        THOMPSON_HULL,
        PAIR_HULL,
        ((0, 1), (1, 0)),
        ((1, 1), (1, 0)),
        ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
        ((0, 1, 0), (0, 0, 1), (1, 1, 0)),
        ((1, 0), (1, 1)),
        ((0, 0), (0, 0)),
    ],
)
def test_mixing_agrees_with_brute_force(rows):
    symbols = tuple(f"s{i}" for i in range(len(rows)))
    v = VertexShift.from_rows(symbols, rows)
    assert is_mixing(v) == brute_force_mixing(rows)


def test_unused_symbols():
    v = VertexShift.from_rows(("a", "b", "c"), ((1, 1, 0), (1, 1, 0), (1, 0, 0)))
    assert essential_core(v) == [0, 1]
    assert unused_symbols(v) == ["c"]
    assert is_mixing(v)


def test_hull_of_the_empty_word_only():
    shift = build_hull(HullSpec(compile_regex("eps", Alphabet(("0", "1"))), "#"))
    assert unused_symbols(shift) == ["0", "1"]
    assert primitivity_exponent(shift) == 1


def test_shift_language_counts():
    v = VertexShift.from_rows(("0", "1", "#"), THOMPSON_HULL)
    words = shift_language(v, 2)
    assert words[0] == ()
    assert len(words) == 1 + 3 + 8
    with pytest.raises(SubshiftError):
        shift_language(v, -1)


def test_to_dot():
    dot = to_dot(VertexShift.from_rows(("0", "1", "#"), THOMPSON_HULL))
    assert dot.startswith("digraph hull {")
    assert '"0" -> "1";' in dot
    assert '"0" -> "#";' not in dot
    assert dot.count("->") == 8


@pytest.mark.parametrize("regex", ["eps+(0+1)*1", "(01)*", "0*1*", "1(0+1)*"])
def test_cross_validation_single(regex):
    spec = HullSpec(compile_regex(regex, Alphabet(("0", "1"))), "#")
    verdict = cross_validate_hull(spec, build_hull(spec), 4)
    assert verdict.passed, verdict.counterexample


def test_cross_validation_pair(pair_spec):
    verdict = cross_validate_hull(pair_spec, build_hull(pair_spec), 4)
    assert verdict.passed, verdict.counterexample


def test_cross_validation_catches_an_extra_edge(language):
    spec = HullSpec(language, "#")
    wrong = VertexShift.from_rows(("0", "1", "#"), ((1, 1, 1), (1, 1, 1), (1, 1, 1)))
    verdict = cross_validate_hull(spec, wrong, 3)
    assert not verdict.passed
    assert verdict.counterexample == ("0", "#")
    assert verdict.in_hull is False
