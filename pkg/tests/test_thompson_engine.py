"""Tests for V and 2V elements: tree pairs, composition and actions."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veemap.engine.thompson_engine import (
    EventuallyZero,
    ThompsonError,
    TwoVElement,
    VElement,
    baker_map,
    prefix_codes,
    random_prefix_code,
    random_two_v_element,
    random_v_element,
    tv_apply,
    tv_apply_words,
    tv_compose,
    tv_equal,
    tv_inverse,
    tv_local_rule,
    tv_product,
    tv_refine,
    v_apply,
    v_apply_word,
    v_compose,
    v_elements,
    v_expand,
    v_inverse,
    v_local_rule,
    v_product,
    v_reduce,
    validate_prefix_code,
)

seeds = st.integers(min_value=0, max_value=100_000)


def same_map(g: VElement, h: VElement) -> bool:
    n = max(g.depth, h.depth)
    return v_local_rule(g, n) == v_local_rule(h, n)


# ---------------------------------------------------------------------------
# V
# ---------------------------------------------------------------------------

def test_prefix_code_validation():
    validate_prefix_code(("0", "10", "11"))
    with pytest.raises(ThompsonError):
        validate_prefix_code(("0",))
    with pytest.raises(ThompsonError):
        validate_prefix_code(("0", "01", "1"))
    with pytest.raises(ThompsonError):
        validate_prefix_code(("0", "2"))
    with pytest.raises(ThompsonError):
        validate_prefix_code(())


def test_velement_rejects_mismatched_leaf_counts():
    with pytest.raises(ThompsonError):
        VElement(("0", "1"), ("",))


def test_swap_local_rule(swap):
    assert v_local_rule(swap, 2) == {"00": "10", "01": "11", "10": "00", "11": "01"}
    with pytest.raises(ThompsonError):
        v_local_rule(VElement(("0", "10", "11"), ("00", "01", "1")), 1)


def test_apply_on_eventually_zero_points(generators, swap):
    assert v_apply(generators["a"], EventuallyZero("11")) == EventuallyZero("1")
    assert v_apply(swap, EventuallyZero("1")) == EventuallyZero("")
    assert v_apply(swap, EventuallyZero("")) == EventuallyZero("1")


def test_eventually_zero_heads_are_canonical():
    with pytest.raises(ThompsonError):
        EventuallyZero("10")
    assert EventuallyZero.canonical("1100") == EventuallyZero("11")
    assert EventuallyZero("1").prefix(3) == "100"


def test_apply_word_needs_enough_digits(swap):
    assert v_apply_word(swap, "0110") == "1110"
    with pytest.raises(ThompsonError):
        v_apply_word(swap, "")


def test_reduce_and_expand(swap):
    expanded = v_expand(swap, 3)
    assert len(expanded.domain) == 8
    assert v_reduce(expanded) == swap
    with pytest.raises(ThompsonError):
        v_expand(VElement(("0", "10", "11"), ("00", "01", "1")), 1)


def test_swap_is_an_involution(swap):
    assert v_compose(swap, swap).is_identity()
    assert v_inverse(swap) == swap
    assert not swap.is_identity()


def test_fixture_generator_orders(generators):
    assert v_product([generators["c"]] * 3).is_identity()
    assert v_product([generators["t"]] * 2).is_identity()
    assert v_product([generators["u"]] * 2).is_identity()
    assert not generators["a"].is_identity()


def test_product_acts_right_to_left(generators):
    a, s = generators["a"], generators["s"]
    word = "110100"
    assert v_apply_word(v_product([a, s]), word) == v_apply_word(a, v_apply_word(s, word))


def test_small_elements_enumeration():
    assert prefix_codes(1) == [("",), ("0", "1")]
    assert len(prefix_codes(2)) == 5
    elements = v_elements(1)
    assert len(elements) == 2
    assert VElement.identity() in elements


@given(seeds)
def test_random_prefix_codes_are_complete(seed):
    rng = random.Random(seed)
    leaves = rng.randint(1, 8)
    validate_prefix_code(random_prefix_code(rng, leaves, 3))


@given(seeds)
def test_inverse_cancels(seed):
    g = random_v_element(random.Random(seed), 3)
    assert v_compose(g, v_inverse(g)).is_identity()
    assert v_compose(v_inverse(g), g).is_identity()


@settings(max_examples=50)
@given(seeds)
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    f, g, h = (random_v_element(rng, 3) for _ in range(3))
    assert same_map(v_compose(v_compose(f, g), h), v_compose(f, v_compose(g, h)))


@given(seeds, st.text(alphabet="01", min_size=6, max_size=10))
def test_action_is_compatible_with_composition(seed, word):
    rng = random.Random(seed)
    g, h = random_v_element(rng, 3), random_v_element(rng, 3)
    assert v_apply_word(v_compose(g, h), word) == v_apply_word(g, v_apply_word(h, word))


@given(seeds)
def test_local_rule_is_injective(seed):
    g = random_v_element(random.Random(seed), 3)
    rule = v_local_rule(g, 3)
    assert len(set(rule.values())) == 8
    for u, image in rule.items():
        assert v_apply_word(g, u) == image


# ---------------------------------------------------------------------------
# 2V
# ---------------------------------------------------------------------------

def test_two_v_rejects_overlaps_and_gaps():
    with pytest.raises(ThompsonError):
        TwoVElement((("0", ""), ("", "0")), (("0", ""), ("1", "")))
    with pytest.raises(ThompsonError):
        TwoVElement((("0", ""),), (("0", ""),))


def test_baker_map():
    baker = baker_map()
    assert tv_apply_words(baker, "1", "1") == ("", "11")
    assert tv_apply_words(baker, "01", "1") == ("1", "01")
    assert not baker.is_identity()
    assert tv_compose(baker, tv_inverse(baker)).is_identity()


def test_baker_on_points():
    x, y = tv_apply(baker_map(), (EventuallyZero("11"), EventuallyZero("")))
    assert x == EventuallyZero("1")
    assert y == EventuallyZero("1")


def test_two_v_local_rule_covers_the_grid():
    rule = tv_local_rule(baker_map(), 2)
    assert len(rule) == 16
    assert rule[("10", "01")] == ("0", "101")
    with pytest.raises(ThompsonError):
        tv_local_rule(baker_map(), 0)


def test_refine_and_equality():
    baker = baker_map()
    grid = tv_refine(baker, 2)
    assert len(grid) == 16
    assert tv_equal(tv_product([baker, TwoVElement.identity()]), baker)


@given(seeds)
def test_two_v_inverse_cancels(seed):
    g = random_two_v_element(random.Random(seed), 3)
    assert tv_compose(g, tv_inverse(g)).is_identity()


@settings(max_examples=40)
@given(seeds)
def test_two_v_composition_is_associative(seed):
    rng = random.Random(seed)
    f, g, h = (random_two_v_element(rng, 2) for _ in range(3))
    assert tv_equal(tv_compose(tv_compose(f, g), h), tv_compose(f, tv_compose(g, h)))


@settings(max_examples=40)
@given(seeds, st.text(alphabet="01", min_size=6, max_size=8), st.text(alphabet="01", min_size=6, max_size=8))
def test_two_v_action_is_compatible_with_composition(seed, u, v):
    rng = random.Random(seed)
    g, h = random_two_v_element(rng, 3), random_two_v_element(rng, 3)
    assert tv_apply_words(tv_compose(g, h), u, v) == tv_apply_words(g, *tv_apply_words(h, u, v))
