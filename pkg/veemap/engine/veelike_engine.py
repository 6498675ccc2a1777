"""
Veelike Engine - Local-rule actions on regular languages.

A veelike action rewrites the length-n prefix of a word by a finite table and
leaves the rest alone; words shorter than n have their own table. V acts this
way on L = eps+(0+1)*1 by conjugating its action on eventually-zero sequences
through w ↦ w·0^∞, and 2V acts likewise on pairs of L-words.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, NamedTuple

from veemap.engine.lang_engine import Dfa, enumerate_words, thompson_language
from veemap.engine.thompson_engine import (
    EventuallyZero,
    TwoVElement,
    VElement,
    tv_apply_words,
    v_apply,
    v_local_rule,
)

logger = logging.getLogger(__name__)


class VeelikeError(Exception):
    """Exception raised for words outside the language and incomplete rules."""
    pass


class WordPair(NamedTuple):
    left: str
    right: str

    def __add__(self, other: tuple) -> WordPair:  # type: ignore[override]
        return WordPair(self.left + other[0], self.right + other[1])


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of a brute-force check; counterexample is (u, v) or a word pair."""
    passed: bool
    counterexample: tuple | None = None
    reason: str = ""
    checked: int = 0


@lru_cache(maxsize=None)
def _language_words(language: Dfa, max_len: int) -> tuple[str, ...]:
    return tuple("".join(w) for w in enumerate_words(language, max_len))


def language_words(language: Dfa, max_len: int) -> tuple[str, ...]:
    """Accepted words up to max_len as strings, in length-lex order."""
    return _language_words(language, max_len)


# ---------------------------------------------------------------------------
# The bijection between L and eventually-zero sequences
# ---------------------------------------------------------------------------

def in_thompson_language(word: str) -> bool:
    return all(ch in "01" for ch in word) and (word == "" or word.endswith("1"))


def phi(word: str) -> EventuallyZero:
    """w ↦ w·0^∞ for w in eps+(0+1)*1."""
    if not in_thompson_language(word):
        raise VeelikeError(f"{word!r} is not in eps+(0+1)*1")
    return EventuallyZero(word)


def phi_inv(x: EventuallyZero) -> str:
    return x.head


# ---------------------------------------------------------------------------
# Single-language rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VeelikeRule:
    """Local rule: long_table on A^n, short_table on language words shorter than n."""
    n: int
    long_table: Mapping[str, str] = field(hash=False)
    short_table: Mapping[str, str] = field(hash=False)
    alphabet: tuple[str, ...] = ("0", "1")
    language: Dfa | None = field(default=None, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise VeelikeError("Rule depth must be non-negative")
        for u in self.long_table:
            if len(u) != self.n:
                raise VeelikeError(f"Long-table key {u!r} does not have length {self.n}")
        for w in self.short_table:
            if len(w) >= self.n:
                raise VeelikeError(f"Short-table key {w!r} is not shorter than {self.n}")

    @classmethod
    def identity(cls, n: int = 0, language: Dfa | None = None) -> VeelikeRule:
        language = language or thompson_language()
        long_table = {"".join(u): "".join(u) for u in itertools.product("01", repeat=n)}
        short_table = {w: w for w in language_words(language, n - 1)} if n > 0 else {}
        return cls(n, long_table, short_table, language=language)


def action_on_l(g: VElement) -> VeelikeRule:
    """
    Veelike rule of g acting on L = eps+(0+1)*1 by w ↦ φ⁻¹(g(φ(w))).

    The depth is one more than the element depth so that a long word keeps a
    trailing 1 after substitution.
    """
    n = g.depth + 1
    language = thompson_language()
    long_table = v_local_rule(g, n)
    short_table = {
        w: phi_inv(v_apply(g, phi(w)))
        for w in language_words(language, n - 1)
    }
    logger.debug("Built veelike rule of depth %d for a %d-leaf element", n, len(g.domain))
    return VeelikeRule(n, long_table, short_table, language=language)


def apply_rule(rule: VeelikeRule, word: str) -> str:
    """
    Image of a language word: the short table below depth n, else long_table(u)·v.

    Raises:
        VeelikeError: word outside the rule's language, or a missing table entry.
    """
    if rule.language is not None and not rule.language.accepts(word):
        raise VeelikeError(f"{word!r} is not in the rule's language")
    if len(word) < rule.n:
        if word not in rule.short_table:
            raise VeelikeError(f"No short-table image for {word!r}")
        return rule.short_table[word]
    prefix = word[:rule.n]
    if prefix not in rule.long_table:
        raise VeelikeError(f"No long-table image for {prefix!r}")
    return rule.long_table[prefix] + word[rule.n:]


def _split(rule: VeelikeRule, word: str) -> tuple[str, str]:
    if len(word) < rule.n:
        return word, ""
    return word[:rule.n], word[rule.n:]


def verify_veelike(
    rule: VeelikeRule, language: Dfa, max_len: int, element: VElement | None = None
) -> VerificationResult:
    """
    Check that the rule acts as a bijection of the language, scanning words up to max_len.

    Checks run in order: totality of both tables, images inside the language,
    agreement with `element` acting through phi (when given), injectivity,
    then surjectivity onto words of length <= max_len - n (whose preimages, if
    any, are short enough to have been scanned).
    """
    for symbols in itertools.product(rule.alphabet, repeat=rule.n):
        u = "".join(symbols)
        if u not in rule.long_table:
            return VerificationResult(False, (u, ""), "long table is not total")

    words = language_words(language, max_len)
    for w in words:
        if len(w) < rule.n and w not in rule.short_table:
            return VerificationResult(False, (w, ""), "short table is not total")

    preimage: dict[str, str] = {}
    for count, w in enumerate(words, start=1):
        image = _apply_unchecked(rule, w)
        if not language.accepts(image):
            return VerificationResult(False, _split(rule, w), "image outside the language", count)
        if element is not None and image != phi_inv(v_apply(element, phi(w))):
            return VerificationResult(False, _split(rule, w), "disagrees with the element action", count)
        if image in preimage:
            return VerificationResult(False, _split(rule, w), "not injective", count)
        preimage[image] = w

    for w in words:
        if len(w) > max_len - rule.n:
            break
        if w not in preimage:
            return VerificationResult(False, (w, ""), "not surjective", len(words))

    return VerificationResult(True, None, "", len(words))


def _apply_unchecked(rule: VeelikeRule, word: str) -> str:
    if len(word) < rule.n:
        return rule.short_table[word]
    return rule.long_table[word[:rule.n]] + word[rule.n:]


def faithfulness_witness(rule: VeelikeRule, language: Dfa, max_len: int) -> str | None:
    """First language word moved by the rule, or None if all words up to max_len are fixed."""
    for w in language_words(language, max_len):
        if _apply_unchecked(rule, w) != w:
            return w
    return None


def epsilon_one_involution() -> VeelikeRule:
    """Swap eps and "1", fix every other word of eps+(0+1)*1."""
    language = thompson_language()
    long_table = {u: u for u in ("00", "01", "10", "11")}
    return VeelikeRule(2, long_table, {"": "1", "1": ""}, language=language)


# ---------------------------------------------------------------------------
# Pair languages
# ---------------------------------------------------------------------------

def alpha_n(pair: tuple[str, str], n: int) -> WordPair:
    """Componentwise length-n prefix (the whole component when shorter)."""
    return WordPair(pair[0][:n], pair[1][:n])


def omega_n(pair: tuple[str, str], n: int) -> WordPair:
    """Tails left after alpha_n, so alpha_n(p) + omega_n(p) == p."""
    return WordPair(pair[0][n:], pair[1][n:])


@dataclass(frozen=True)
class PairVeelikeRule:
    """Local rule F on prefix pairs: g·(u, v) = F(alpha_n(u, v)) + omega_n(u, v)."""
    n: int
    table: Mapping[WordPair, WordPair] = field(hash=False)
    languages: tuple[Dfa, Dfa] | None = field(default=None, compare=False, hash=False)

    @classmethod
    def identity(cls, n: int = 0) -> PairVeelikeRule:
        language = thompson_language()
        words = _pair_keys(language, n)
        table = {WordPair(p, q): WordPair(p, q) for p in words for q in words}
        return cls(n, table, (language, language))


def _pair_keys(language: Dfa, n: int) -> list[str]:
    """Coordinate keys: language words shorter than n, and every binary word of length n."""
    short = list(language_words(language, n - 1)) if n > 0 else []
    return short + ["".join(u) for u in itertools.product("01", repeat=n)]


def pair_action(g: TwoVElement) -> PairVeelikeRule:
    """Pair rule of g acting on L × L by (u, v) ↦ (φ⁻¹ × φ⁻¹)(g(φ(u), φ(v)))."""
    m = g.depth + 1
    language = thompson_language()
    keys = _pair_keys(language, m)
    table: dict[WordPair, WordPair] = {}
    for p in keys:
        for q in keys:
            a, b = tv_apply_words(g, p + "0" * m, q + "0" * m)
            # a long coordinate keeps its tail: its trailing zeros are real symbols
            left = a[: len(a) - m] if len(p) == m else a.rstrip("0")
            right = b[: len(b) - m] if len(q) == m else b.rstrip("0")
            table[WordPair(p, q)] = WordPair(left, right)
    logger.debug("Built pair rule of depth %d with %d entries", m, len(table))
    return PairVeelikeRule(m, table, (language, language))


def apply_pair_rule(rule: PairVeelikeRule, pair: tuple[str, str]) -> WordPair:
    """
    Image F(alpha_n(u, v)) + omega_n(u, v).

    Raises:
        VeelikeError: a component outside its language, or a missing table entry.
    """
    if rule.languages is not None:
        for component, language in zip(pair, rule.languages):
            if not language.accepts(component):
                raise VeelikeError(f"{component!r} is not in the rule's language")
    key = alpha_n(pair, rule.n)
    if key not in rule.table:
        raise VeelikeError(f"No table entry for {tuple(key)}")
    return rule.table[key] + omega_n(pair, rule.n)


def verify_pair_veelike(
    rule: PairVeelikeRule, left: Dfa, right: Dfa, max_len: int
) -> VerificationResult:
    """Pairwise analogue of verify_veelike over components of length <= max_len."""
    lefts = language_words(left, max_len)
    rights = language_words(right, max_len)

    preimage: dict[WordPair, WordPair] = {}
    count = 0
    for u in lefts:
        for v in rights:
            count += 1
            pair = WordPair(u, v)
            key = alpha_n(pair, rule.n)
            if key not in rule.table:
                return VerificationResult(False, pair, "table is not total", count)
            image = rule.table[key] + omega_n(pair, rule.n)
            if not (left.accepts(image.left) and right.accepts(image.right)):
                return VerificationResult(False, pair, "image outside the language", count)
            if image in preimage:
                return VerificationResult(False, pair, "not injective", count)
            preimage[image] = pair

    bound = max_len - rule.n
    for u in lefts:
        if len(u) > bound:
            break
        for v in rights:
            if len(v) > bound:
                break
            if WordPair(u, v) not in preimage:
                return VerificationResult(False, WordPair(u, v), "not surjective", count)

    return VerificationResult(True, None, "", count)
