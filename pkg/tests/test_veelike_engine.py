"""Tests for veelike rules on L and on L x L."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veemap.engine.lang_engine import compile_regex
from veemap.engine.thompson_engine import baker_map, random_two_v_element, random_v_element, v_elements
from veemap.engine.veelike_engine import (
    PairVeelikeRule,
    VeelikeError,
    VeelikeRule,
    WordPair,
    action_on_l,
    alpha_n,
    apply_pair_rule,
    apply_rule,
    epsilon_one_involution,
    faithfulness_witness,
    language_words,
    omega_n,
    pair_action,
    phi,
    verify_pair_veelike,
    verify_veelike,
)
from veemap.simulation.pointwise import PointwiseOracle

seeds = st.integers(min_value=0, max_value=100_000)


def test_swap_rule_tables(swap):
    rule = action_on_l(swap)
    assert rule.n == 2
    assert dict(rule.short_table) == {"": "1", "1": ""}
    assert dict(rule.long_table) == {"00": "10", "01": "11", "10": "00", "11": "01"}


def test_apply_rule(swap):
    rule = action_on_l(swap)
    assert apply_rule(rule, "") == "1"
    assert apply_rule(rule, "01") == "11"
    assert apply_rule(rule, "0101") == "1101"
    with pytest.raises(VeelikeError):
        apply_rule(rule, "10")


def test_phi_rejects_words_outside_the_language():
    assert phi("011").head == "011"
    with pytest.raises(VeelikeError):
        phi("0")


def test_rule_shape_is_validated():
    with pytest.raises(VeelikeError):
        VeelikeRule(2, {"0": "0"}, {})
    with pytest.raises(VeelikeError):
        VeelikeRule(1, {"0": "0", "1": "1"}, {"1": "1"})
    with pytest.raises(VeelikeError):
        VeelikeRule(-1, {}, {})


def test_generators_are_veelike(generators, language):
    for g in generators.values():
        verdict = verify_veelike(action_on_l(g), language, 10)
        assert verdict.passed, verdict.reason
        assert verdict.checked == len(language_words(language, 10))


def test_identity_rule_has_no_faithfulness_witness(language):
    rule = VeelikeRule.identity(3)
    assert verify_veelike(rule, language, 8).passed
    assert faithfulness_witness(rule, language, 8) is None


def test_faithfulness_witness(swap, language):
    assert faithfulness_witness(action_on_l(swap), language, 4) == ""


def test_corrupted_long_table_is_not_injective(swap, language):
    rule = action_on_l(swap)
    long_table = dict(rule.long_table)
    long_table["00"] = "0"
    broken = VeelikeRule(rule.n, long_table, rule.short_table, language=language)
    verdict = verify_veelike(broken, language, 6)
    assert not verdict.passed
    assert verdict.reason == "not injective"
    assert verdict.counterexample == ("00", "1")


def test_missing_entries_are_reported(swap, language):
    rule = action_on_l(swap)
    long_table = dict(rule.long_table)
    del long_table["11"]
    verdict = verify_veelike(VeelikeRule(2, long_table, rule.short_table), language, 6)
    assert not verdict.passed
    assert verdict.reason == "long table is not total"

    verdict = verify_veelike(VeelikeRule(2, rule.long_table, {"": "1"}), language, 6)
    assert verdict.reason == "short table is not total"


def test_image_outside_the_language(swap, language):
    rule = action_on_l(swap)
    broken = VeelikeRule(2, rule.long_table, {"": "0", "1": ""})
    verdict = verify_veelike(broken, language, 6)
    assert verdict.reason == "image outside the language"
    assert verdict.counterexample == ("", "")


def test_non_surjective_rule(language):
    # w -> 1w is injective on L but misses "" and every word starting with 0
    long_table = {"0": "10", "1": "11"}
    rule = VeelikeRule(1, long_table, {"": "1"})
    verdict = verify_veelike(rule, language, 6)
    assert not verdict.passed
    assert verdict.reason == "not surjective"
    assert verdict.counterexample == ("", "")


def test_epsilon_one_involution(language):
    rule = epsilon_one_involution()
    assert verify_veelike(rule, language, 10).passed
    assert apply_rule(rule, "") == "1"
    assert apply_rule(rule, "1") == ""
    assert apply_rule(rule, "011") == "011"


def test_bijection_of_the_wrong_element_is_caught(swap, language):
    # both rules are bijections of L; only the element check tells them apart
    identity = VeelikeRule.identity(2)
    assert verify_veelike(identity, language, 8).passed
    verdict = verify_veelike(identity, language, 8, element=swap)
    assert not verdict.passed
    assert verdict.reason == "disagrees with the element action"
    assert verdict.counterexample == ("", "")

    verdict = verify_veelike(epsilon_one_involution(), language, 8, element=swap)
    assert verdict.reason == "disagrees with the element action"
    assert verdict.counterexample == ("01", "")
    assert verdict.checked == 3


def test_corrupted_long_table_disagrees_with_its_element(generators, language):
    g = generators["c"]
    rule = action_on_l(g)
    long_table = dict(rule.long_table)
    long_table["001"], long_table["011"] = long_table["011"], long_table["001"]
    swapped = VeelikeRule(rule.n, long_table, rule.short_table, language=language)
    assert verify_veelike(swapped, language, 8).passed
    verdict = verify_veelike(swapped, language, 8, element=g)
    assert not verdict.passed
    assert verdict.reason == "disagrees with the element action"
    assert verdict.counterexample == ("001", "")


def test_epsilon_one_involution_is_not_a_small_element(language):
    involution = epsilon_one_involution()
    words = language_words(language, 6)
    for g in v_elements(2):
        rule = action_on_l(g)
        assert any(apply_rule(rule, w) != apply_rule(involution, w) for w in words)


@settings(max_examples=40)
@given(seeds)
def test_random_elements_are_veelike(seed):
    language = compile_regex("eps+(0+1)*1")
    g = random_v_element(random.Random(seed), 3)
    verdict = verify_veelike(action_on_l(g), language, 9)
    assert verdict.passed, verdict


@settings(max_examples=40)
@given(seeds, st.text(alphabet="01", max_size=10))
def test_rule_agrees_with_pointwise_action(seed, word):
    word = word + "1" if word else word
    g = random_v_element(random.Random(seed), 3)
    assert apply_rule(action_on_l(g), word) == PointwiseOracle().act(g, word)


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------

def test_alpha_and_omega_split_pairs():
    pair = WordPair("0110", "1")
    assert alpha_n(pair, 2) == WordPair("01", "1")
    assert omega_n(pair, 2) == WordPair("10", "")
    assert alpha_n(pair, 2) + omega_n(pair, 2) == pair


def test_baker_pair_rule():
    rule = pair_action(baker_map())
    assert rule.n == 2
    assert apply_pair_rule(rule, ("1", "1")) == WordPair("", "11")
    assert apply_pair_rule(rule, ("0101", "")) == WordPair("101", "")
    with pytest.raises(VeelikeError):
        apply_pair_rule(rule, ("10", ""))


def test_baker_pair_rule_is_veelike(language):
    verdict = verify_pair_veelike(pair_action(baker_map()), language, language, 6)
    assert verdict.passed, verdict.reason


def test_identity_pair_rule(language):
    rule = PairVeelikeRule.identity(2)
    assert apply_pair_rule(rule, ("011", "1")) == WordPair("011", "1")
    assert verify_pair_veelike(rule, language, language, 5).passed


def test_broken_pair_rule_is_caught(language):
    rule = pair_action(baker_map())
    table = dict(rule.table)
    table[WordPair("", "")] = table[WordPair("1", "")]
    verdict = verify_pair_veelike(PairVeelikeRule(rule.n, table), language, language, 5)
    assert not verdict.passed
    assert verdict.reason == "not injective"


@settings(max_examples=25)
@given(seeds, st.text(alphabet="01", max_size=6), st.text(alphabet="01", max_size=6))
def test_pair_rule_agrees_with_pointwise_action(seed, left, right):
    left = left + "1" if left else left
    right = right + "1" if right else right
    g = random_two_v_element(random.Random(seed), 2)
    assert tuple(apply_pair_rule(pair_action(g), (left, right))) == PointwiseOracle().act_pair(g, left, right)
