"""
Subshift Engine - Vertex shifts, SFT presentations and hull construction.

The hull of a language L with separator # is the smallest subshift containing
every configuration ...#w#w'#w''#... with words from L. When L is locally
2-testable the hull is a vertex shift, whose matrix is read off the bigrams
realized in such configurations.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from veemap.simulation.hull_factors import hull_factors
from veemap.engine.lang_engine import (
    Alphabet,
    Dfa,
    LanguageError,
    Word,
    enumerate_words,
    local_testability_witness,
    word_text,
)

logger = logging.getLogger(__name__)


class SubshiftError(Exception):
    """Exception raised for malformed shift presentations."""
    pass


class HullRefusal(SubshiftError):
    """The hull language is not locally 2-testable; carries the witness pair."""

    def __init__(self, component: str, witness: tuple[Word, Word]):
        self.component = component
        self.witness = witness
        accepted, rejected = witness
        super().__init__(
            f"{component} language is not locally 2-testable: "
            f"{word_text(accepted)!r} is in, {word_text(rejected)!r} is out"
        )


@dataclass(frozen=True)
class VertexShift:
    """Bi-infinite walks on the graph with the given 0/1 adjacency matrix."""
    alphabet: Alphabet
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        size = len(self.alphabet)
        if len(self.matrix) != size or any(len(row) != size for row in self.matrix):
            raise SubshiftError(f"Matrix must be {size}x{size} to match the alphabet")
        if any(x not in (0, 1) for row in self.matrix for x in row):
            raise SubshiftError("Matrix entries must be 0 or 1")

    @classmethod
    def from_rows(cls, symbols: Sequence[str], rows: Sequence[Sequence[int]]) -> VertexShift:
        return cls(Alphabet(tuple(symbols)), tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def allows(self, a: str, b: str) -> bool:
        return self.matrix[self.alphabet.index(a)][self.alphabet.index(b)] == 1

    def bigrams(self) -> list[Word]:
        symbols = self.alphabet.symbols
        return [
            (symbols[i], symbols[j])
            for i in range(self.size)
            for j in range(self.size)
            if self.matrix[i][j]
        ]

    def first_forbidden(self, word: Sequence[str], circular: bool = False) -> Word | None:
        """First forbidden bigram of a (possibly circular) word, or None."""
        w = tuple(word)
        if not w:
            return None
        pairs = list(zip(w, w[1:]))
        if circular:
            pairs.append((w[-1], w[0]))
        for a, b in pairs:
            if not self.allows(a, b):
                return a, b
        return None


@dataclass(frozen=True)
class Sft:
    """Shift avoiding a finite set of forbidden words."""
    alphabet: Alphabet
    forbidden: frozenset[Word] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "forbidden", frozenset(tuple(w) for w in self.forbidden))
        for w in self.forbidden:
            if not w:
                raise SubshiftError("Forbidden words must be non-empty")
            for symbol in w:
                if symbol not in self.alphabet:
                    raise SubshiftError(f"Forbidden word {w} uses unknown symbol {symbol!r}")


def sft_from_bigrams(v: VertexShift) -> Sft:
    symbols = v.alphabet.symbols
    forbidden = {
        (symbols[i], symbols[j])
        for i in range(v.size)
        for j in range(v.size)
        if not v.matrix[i][j]
    }
    return Sft(v.alphabet, frozenset(forbidden))


def vertex_from_sft(s: Sft) -> VertexShift:
    """
    Raises:
        SubshiftError: a forbidden word does not have length 2.
    """
    for w in s.forbidden:
        if len(w) != 2:
            raise SubshiftError(f"Forbidden word {w} does not have length 2")
    symbols = s.alphabet.symbols
    matrix = tuple(
        tuple(0 if (a, b) in s.forbidden else 1 for b in symbols)
        for a in symbols
    )
    return VertexShift(s.alphabet, matrix)


# ---------------------------------------------------------------------------
# Hull construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullSpec:
    """
    Hull input. Single mode: language and separator. Pair mode additionally
    sets right_language and inner_separator; reverse_left reverses the left
    component so configurations read # u @ v # with (u^R, v) in the pair language.
    """
    language: Dfa
    separator: str = "#"
    right_language: Dfa | None = None
    inner_separator: str | None = None
    reverse_left: bool = True

    def __post_init__(self) -> None:
        if (self.right_language is None) != (self.inner_separator is None):
            raise SubshiftError("Pair mode needs both a right language and an inner separator")
        content = set(self.language.alphabet)
        if self.is_pair:
            right = set(self.right_language.alphabet)  # type: ignore[union-attr]
            if content & right:
                raise SubshiftError(f"Component alphabets overlap: {sorted(content & right)}")
            content |= right
            if self.inner_separator == self.separator:
                raise SubshiftError("Separators must differ")
        for sep in (self.separator, self.inner_separator):
            if sep is not None and sep in content:
                raise SubshiftError(f"Separator {sep!r} is also a content symbol")

    @property
    def is_pair(self) -> bool:
        return self.right_language is not None

    @property
    def symbols(self) -> tuple[str, ...]:
        """Matrix symbol order: A, then @ and B in pair mode, then #."""
        symbols = self.language.alphabet.symbols
        if self.is_pair:
            symbols += (self.inner_separator,) + self.right_language.alphabet.symbols  # type: ignore
        return symbols + (self.separator,)


@dataclass(frozen=True)
class LanguageBigrams:
    """Boundary and interior data of a language, all exact."""
    interior: frozenset[Word]
    first: frozenset[str]
    last: frozenset[str]
    has_empty: bool
    is_empty: bool


def _reachable(d: Dfa) -> set[int]:
    seen = {d.start}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for t in d.delta[q]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _coreachable(d: Dfa) -> set[int]:
    live = set(d.accepting)
    changed = True
    while changed:
        changed = False
        for q in range(d.states):
            if q not in live and any(t in live for t in d.delta[q]):
                live.add(q)
                changed = True
    return live


def language_factor_bigrams(d: Dfa) -> LanguageBigrams:
    """
    Bigrams occurring inside accepted words, first and last symbols of
    non-empty accepted words, and whether the empty word is accepted.
    """
    reach = _reachable(d)
    live = _coreachable(d)
    symbols = d.alphabet.symbols
    interior = set()
    last = set()
    for q in reach:
        for i, a in enumerate(symbols):
            mid = d.delta[q][i]
            if mid in d.accepting:
                last.add(a)
            for j, b in enumerate(symbols):
                if d.delta[mid][j] in live:
                    interior.add((a, b))
    first = {a for i, a in enumerate(symbols) if d.delta[d.start][i] in live}
    return LanguageBigrams(
        interior=frozenset(interior),
        first=frozenset(first),
        last=frozenset(last),
        has_empty=d.start in d.accepting,
        is_empty=d.start not in live,
    )


def _reversed(b: LanguageBigrams) -> LanguageBigrams:
    return LanguageBigrams(
        interior=frozenset((y, x) for x, y in b.interior),
        first=b.last,
        last=b.first,
        has_empty=b.has_empty,
        is_empty=b.is_empty,
    )


def _require_two_testable(d: Dfa, component: str) -> None:
    witness = local_testability_witness(d, 2)
    if witness is not None:
        logger.warning("Refusing hull: %s language fails local 2-testability", component)
        raise HullRefusal(component, witness)


def _matrix_from(symbols: tuple[str, ...], allowed: set[Word]) -> VertexShift:
    matrix = tuple(tuple(int((a, b) in allowed) for b in symbols) for a in symbols)
    shift = VertexShift(Alphabet(symbols), matrix)
    unused = unused_symbols(shift)
    if unused:
        logger.warning("Hull symbols on no bi-infinite configuration: %s", ", ".join(unused))
    return shift


def hull_vertex_shift(h: HullSpec) -> VertexShift:
    """
    Vertex shift of the single-language hull over A ∪ {#}.

    Raises:
        HullRefusal: the language is not locally 2-testable.
        SubshiftError: h is in pair mode.
    """
    if h.is_pair:
        raise SubshiftError("Use pair_hull_vertex_shift for pair hulls")
    _require_two_testable(h.language, "single")
    data = language_factor_bigrams(h.language)
    sep = h.separator
    allowed: set[Word] = set()
    if not data.is_empty:
        allowed |= data.interior
        allowed |= {(sep, a) for a in data.first}
        allowed |= {(a, sep) for a in data.last}
        if data.has_empty:
            allowed.add((sep, sep))
    logger.debug("Single hull has %d allowed bigrams", len(allowed))
    return _matrix_from(h.symbols, allowed)


def pair_hull_vertex_shift(h: HullSpec) -> VertexShift:
    """
    Vertex shift of the pair hull over A ∪ {@} ∪ B ∪ {#}; segments read # u @ v #.

    Raises:
        HullRefusal: a component language is not locally 2-testable.
        SubshiftError: h is in single mode.
    """
    if not h.is_pair:
        raise SubshiftError("pair_hull_vertex_shift needs a pair-mode spec")
    right_language = h.right_language
    assert right_language is not None and h.inner_separator is not None
    _require_two_testable(h.language, "left")
    _require_two_testable(right_language, "right")
    left = language_factor_bigrams(h.language)
    if h.reverse_left:
        left = _reversed(left)
    right = language_factor_bigrams(right_language)
    sep, inner = h.separator, h.inner_separator
    allowed: set[Word] = set()
    if not (left.is_empty or right.is_empty):
        allowed |= left.interior | right.interior
        allowed |= {(sep, a) for a in left.first}
        allowed |= {(a, inner) for a in left.last}
        allowed |= {(inner, b) for b in right.first}
        allowed |= {(b, sep) for b in right.last}
        if left.has_empty:
            allowed.add((sep, inner))
        if right.has_empty:
            allowed.add((inner, sep))
    logger.debug("Pair hull has %d allowed bigrams", len(allowed))
    return _matrix_from(h.symbols, allowed)


def build_hull(h: HullSpec) -> VertexShift:
    return pair_hull_vertex_shift(h) if h.is_pair else hull_vertex_shift(h)


# ---------------------------------------------------------------------------
# Graph structure
# ---------------------------------------------------------------------------

def essential_core(v: VertexShift) -> list[int]:
    """Indices of symbols on some bi-infinite walk (iteratively drop sources and sinks)."""
    alive = set(range(v.size))
    changed = True
    while changed:
        changed = False
        for s in sorted(alive):
            has_out = any(v.matrix[s][t] for t in alive)
            has_in = any(v.matrix[t][s] for t in alive)
            if not (has_out and has_in):
                alive.discard(s)
                changed = True
    return sorted(alive)


def unused_symbols(v: VertexShift) -> list[str]:
    core = set(essential_core(v))
    return [s for i, s in enumerate(v.alphabet) if i not in core]


def primitivity_exponent(v: VertexShift) -> int | None:
    """
    Least k with the k-th power of the core matrix strictly positive, or None.

    Searches up to the Wielandt bound (d-1)^2 + 1.
    """
    core = essential_core(v)
    if not core:
        return None
    m = np.array([[v.matrix[i][j] for j in core] for i in core], dtype=np.int64)
    d = len(core)
    power = m.copy()
    for k in range(1, (d - 1) ** 2 + 2):
        if power.all():
            return k
        power = ((power @ m) > 0).astype(np.int64)
    return None


def is_mixing(v: VertexShift) -> bool:
    """True iff the essential core is non-empty and its matrix is primitive."""
    return primitivity_exponent(v) is not None


def shift_language(v: VertexShift, m: int) -> list[Word]:
    """Words of length <= m on bi-infinite walks, in length-then-symbol order."""
    if m < 0:
        raise SubshiftError("m must be non-negative")
    core = essential_core(v)
    symbols = v.alphabet.symbols
    result: list[Word] = [()]
    layer: list[tuple[int, ...]] = [(i,) for i in core]
    for _ in range(m):
        result.extend(tuple(symbols[i] for i in w) for w in layer)
        layer = [w + (j,) for w in layer for j in core if v.matrix[w[-1]][j]]
    return result


def to_dot(v: VertexShift, name: str = "hull") -> str:
    """Graphviz digraph: one node per symbol, an edge per allowed bigram."""
    lines = [f"digraph {name} {{"]
    for symbol in v.alphabet:
        lines.append(f'  "{symbol}";')
    for a, b in v.bigrams():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cross-validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossValidationResult:
    """
    Outcome of comparing a matrix with the brute-forced hull language.

    counterexample is the first differing word in length-lex order; in_hull says
    which side it belongs to.
    """
    passed: bool
    counterexample: Word | None = None
    in_hull: bool | None = None
    checked: int = 0


def hull_components(h: HullSpec, max_len: int) -> list[tuple[list[Word], str]]:
    """Component word lists for the brute-force hull oracle."""
    try:
        left = enumerate_words(h.language, max_len)
    except LanguageError as exc:
        raise SubshiftError(str(exc)) from exc
    if not h.is_pair:
        return [(left, h.separator)]
    if h.reverse_left:
        left = [tuple(reversed(w)) for w in left]
    right = enumerate_words(h.right_language, max_len)  # type: ignore[arg-type]
    return [(left, h.inner_separator), (right, h.separator)]  # type: ignore[list-item]


def cross_validate_hull(h: HullSpec, v: VertexShift, m: int, slack: int = 2) -> CrossValidationResult:
    """
    Compare shift_language(v, m) with the factors of hull configurations built
    from component words of length <= m + slack.
    """
    expected = hull_factors(hull_components(h, m + slack), m)
    actual = set(shift_language(v, m))
    if expected == actual:
        return CrossValidationResult(True, None, None, len(actual))
    order = {s: i for i, s in enumerate(v.alphabet)}

    def key(w: Word) -> tuple:
        return len(w), tuple(order.get(s, len(order)) for s in w)

    first = min(expected ^ actual, key=key)
    logger.debug("Hull mismatch at %s", first)
    return CrossValidationResult(False, first, first in expected, len(actual))
