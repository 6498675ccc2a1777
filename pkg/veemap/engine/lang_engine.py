"""
Lang Engine - Alphabets, words and finite automata.

Regular-language machinery consumed by every other engine:
- Regex parsing and automaton combinators
- Minimization with canonical state numbering
- Length-then-lexicographic enumeration
- Local testability, syntactic monoids
- Unbordered marker-word search
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

Word = tuple[str, ...]

EPSILON_KEYWORD = "eps"
_OPERATORS = "()+*"


class LanguageError(Exception):
    """Exception raised for alphabet, word and automaton errors."""
    pass


def as_word(word: str | Sequence[str]) -> Word:
    """Turn a string of one-character symbols (or any symbol sequence) into a Word."""
    return tuple(word)


def word_text(word: Sequence[str]) -> str:
    """Readable rendering; multi-character symbols are space separated."""
    if all(len(symbol) == 1 for symbol in word):
        return "".join(word)
    return " ".join(word)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbols; the order fixes matrix indexing downstream."""
    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise LanguageError("Alphabet must not be empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise LanguageError(f"Alphabet has duplicate symbols: {self.symbols}")
        for symbol in self.symbols:
            if not isinstance(symbol, str) or not symbol:
                raise LanguageError(f"Invalid symbol {symbol!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise LanguageError(f"Symbol {symbol!r} not in alphabet {self.symbols}") from None

    def word(self, word: str | Sequence[str]) -> Word:
        """Validate a word against this alphabet."""
        result = as_word(word)
        for symbol in result:
            if symbol not in self.symbols:
                raise LanguageError(f"Symbol {symbol!r} not in alphabet {self.symbols}")
        return result


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; delta[state][symbol index] is the next state."""
    alphabet: Alphabet
    states: int
    start: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if self.states < 1:
            raise LanguageError("DFA needs at least one state")
        if not 0 <= self.start < self.states:
            raise LanguageError(f"Start state {self.start} out of range")
        if any(not 0 <= q < self.states for q in self.accepting):
            raise LanguageError("Accepting states out of range")
        if len(self.delta) != self.states:
            raise LanguageError(f"Transition table has {len(self.delta)} rows, expected {self.states}")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise LanguageError("Transition function must be total")
            if any(not 0 <= q < self.states for q in row):
                raise LanguageError("Transition target out of range")

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.alphabet.index(symbol)]

    def run(self, word: str | Sequence[str], state: int | None = None) -> int:
        current = self.start if state is None else state
        for symbol in as_word(word):
            current = self.step(current, symbol)
        return current

    def accepts(self, word: str | Sequence[str]) -> bool:
        return self.run(word) in self.accepting

    def __contains__(self, word: object) -> bool:
        return self.accepts(word)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _crawl(
    alphabet: Alphabet,
    initial: Hashable,
    final: Callable[[Hashable], bool],
    follow: Callable[[Hashable, str], Hashable],
) -> Dfa:
    """
    Explore the automaton whose states are the values reachable from `initial`
    under `follow`, numbering them in discovery order.
    """
    states: list[Hashable] = [initial]
    index: dict[Hashable, int] = {initial: 0}
    accepting: set[int] = set()
    delta: list[tuple[int, ...]] = []

    i = 0
    while i < len(states):
        state = states[i]
        if final(state):
            accepting.add(i)
        row = []
        for symbol in alphabet:
            target = follow(state, symbol)
            if target not in index:
                index[target] = len(states)
                states.append(target)
            row.append(index[target])
        delta.append(tuple(row))
        i += 1

    return Dfa(alphabet, len(states), 0, frozenset(accepting), tuple(delta))


def null_dfa(alphabet: Alphabet) -> Dfa:
    """Automaton of the empty language."""
    return Dfa(alphabet, 1, 0, frozenset(), ((0,) * len(alphabet),))


def epsilon_dfa(alphabet: Alphabet) -> Dfa:
    """Automaton accepting only the empty word."""
    k = len(alphabet)
    return Dfa(alphabet, 2, 0, frozenset({0}), ((1,) * k, (1,) * k))


def symbol_dfa(alphabet: Alphabet, symbol: str) -> Dfa:
    """Automaton accepting the one-symbol word `symbol`."""
    target = alphabet.index(symbol)
    first = tuple(1 if i == target else 2 for i in range(len(alphabet)))
    dead = (2,) * len(alphabet)
    return Dfa(alphabet, 3, 0, frozenset({1}), (first, dead, dead))


def full_dfa(alphabet: Alphabet) -> Dfa:
    """Automaton accepting every word."""
    return Dfa(alphabet, 1, 0, frozenset({0}), ((0,) * len(alphabet),))


def _require_same_alphabet(d1: Dfa, d2: Dfa) -> None:
    if d1.alphabet != d2.alphabet:
        raise LanguageError(
            f"Alphabet mismatch: {d1.alphabet.symbols} vs {d2.alphabet.symbols}"
        )


def concat(d1: Dfa, d2: Dfa) -> Dfa:
    """Automaton for the concatenation L(d1)·L(d2)."""
    _require_same_alphabet(d1, d2)
    initial = {(0, d1.start)}
    if d1.start in d1.accepting:
        initial.add((1, d2.start))

    def final(state):
        for side, q in state:
            if side == 0 and q in d1.accepting and d2.start in d2.accepting:
                return True
            if side == 1 and q in d2.accepting:
                return True
        return False

    def follow(state, symbol):
        nxt = set()
        for side, q in state:
            if side == 0:
                target = d1.step(q, symbol)
                nxt.add((0, target))
                if target in d1.accepting:
                    nxt.add((1, d2.start))
            else:
                nxt.add((1, d2.step(q, symbol)))
        return frozenset(nxt)

    return minimize(_crawl(d1.alphabet, frozenset(initial), final, follow))


def star(d: Dfa) -> Dfa:
    """
    Automaton for L(d)*.

    A fresh "omega" marker is the only accepting token; it behaves like the
    start state and every exit through an accepting state returns to it.
    """
    omega = -1

    def follow(state, symbol):
        nxt = set()
        for q in state:
            source = d.start if q == omega else q
            target = d.step(source, symbol)
            nxt.add(target)
            if target in d.accepting:
                nxt.add(omega)
        return frozenset(nxt)

    def final(state):
        return omega in state

    return minimize(_crawl(d.alphabet, frozenset({omega}), final, follow))


def _product(d1: Dfa, d2: Dfa, final: Callable[[bool, bool], bool]) -> Dfa:
    _require_same_alphabet(d1, d2)

    def follow(state, symbol):
        return d1.step(state[0], symbol), d2.step(state[1], symbol)

    def is_final(state):
        return final(state[0] in d1.accepting, state[1] in d2.accepting)

    return minimize(_crawl(d1.alphabet, (d1.start, d2.start), is_final, follow))


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return _product(d1, d2, lambda a, b: a or b)


def intersect(d1: Dfa, d2: Dfa) -> Dfa:
    return _product(d1, d2, lambda a, b: a and b)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.states, d.start, frozenset(range(d.states)) - d.accepting, d.delta)


def reverse(d: Dfa) -> Dfa:
    """Automaton for the reversal of L(d) (subset construction on the reversed graph)."""
    predecessors: dict[tuple[int, int], set[int]] = {}
    for q in range(d.states):
        for i, target in enumerate(d.delta[q]):
            predecessors.setdefault((target, i), set()).add(q)

    def follow(state, symbol):
        i = d.alphabet.index(symbol)
        nxt: set[int] = set()
        for q in state:
            nxt |= predecessors.get((q, i), set())
        return frozenset(nxt)

    def final(state):
        return d.start in state

    return minimize(_crawl(d.alphabet, frozenset(d.accepting), final, follow))


def rename(d: Dfa, mapping: Mapping[str, str]) -> Dfa:
    """Rename symbols; symbol order (and so matrix indexing) is preserved."""
    symbols = tuple(mapping.get(symbol, symbol) for symbol in d.alphabet)
    return Dfa(Alphabet(symbols), d.states, d.start, d.accepting, d.delta)


def from_words(alphabet: Alphabet, words: Iterable[str | Sequence[str]]) -> Dfa:
    """Automaton of a finite language."""
    result = null_dfa(alphabet)
    for word in words:
        piece = epsilon_dfa(alphabet)
        for symbol in alphabet.word(word):
            piece = concat(piece, symbol_dfa(alphabet, symbol))
        result = union(result, piece)
    return result


# ---------------------------------------------------------------------------
# Regular expressions: symbols, concatenation, "+", "*", "()", "eps"
# ---------------------------------------------------------------------------

def _infer_alphabet(text: str) -> Alphabet:
    stripped = text.replace(EPSILON_KEYWORD, " ")
    symbols = sorted({ch for ch in stripped if ch not in _OPERATORS and not ch.isspace()})
    if not symbols:
        raise LanguageError(f"Cannot infer an alphabet from {text!r}; pass one explicitly")
    return Alphabet(tuple(symbols))


def _tokenize(text: str, alphabet: Alphabet) -> list[str]:
    by_length = sorted(alphabet.symbols, key=len, reverse=True)
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _OPERATORS:
            tokens.append(ch)
            pos += 1
            continue
        if text.startswith(EPSILON_KEYWORD, pos) and EPSILON_KEYWORD not in alphabet:
            tokens.append(EPSILON_KEYWORD)
            pos += len(EPSILON_KEYWORD)
            continue
        for symbol in by_length:
            if text.startswith(symbol, pos):
                tokens.append(symbol)
                pos += len(symbol)
                break
        else:
            raise LanguageError(f"Unexpected character {ch!r} at position {pos} in {text!r}")
    return tokens


class _RegexParser:
    """Recursive-descent parser building automata bottom-up."""

    def __init__(self, tokens: list[str], alphabet: Alphabet) -> None:
        self.tokens = tokens
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> Dfa:
        result = self.expr()
        if self.peek() is not None:
            raise LanguageError(f"Unexpected token {self.peek()!r} at token {self.pos}")
        return result

    def expr(self) -> Dfa:
        result = self.term()
        while self.peek() == "+":
            self.take()
            result = union(result, self.term())
        return result

    def term(self) -> Dfa:
        if self.peek() in (None, "+", ")", "*"):
            raise LanguageError(f"Empty operand at token {self.pos}")
        result = self.factor()
        while self.peek() not in (None, "+", ")"):
            result = concat(result, self.factor())
        return result

    def factor(self) -> Dfa:
        result = self.atom()
        while self.peek() == "*":
            self.take()
            result = star(result)
        return result

    def atom(self) -> Dfa:
        token = self.take()
        if token == "(":
            result = self.expr()
            if self.peek() != ")":
                raise LanguageError("Unbalanced parentheses")
            self.take()
            return result
        if token == EPSILON_KEYWORD:
            return epsilon_dfa(self.alphabet)
        if token in self.alphabet:
            return symbol_dfa(self.alphabet, token)
        raise LanguageError(f"Unexpected token {token!r}")


def compile_regex(text: str, alphabet: Alphabet | Sequence[str] | None = None) -> Dfa:
    """
    Compile a regular expression into a minimal DFA.

    Args:
        text: Expression such as "eps+(0+1)*1".
        alphabet: Symbol order; inferred (sorted one-character symbols) when omitted.

    Returns:
        Minimal DFA with canonical state numbering.
    """
    if alphabet is None:
        alphabet = _infer_alphabet(text)
    elif not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    tokens = _tokenize(text, alphabet)
    if not tokens:
        raise LanguageError("Empty regular expression")
    result = minimize(_RegexParser(tokens, alphabet).parse())
    logger.debug("Compiled %r to a %d-state DFA", text, result.states)
    return result


@lru_cache(maxsize=None)
def thompson_language() -> Dfa:
    """The language eps+(0+1)*1 of words that are empty or end in 1."""
    return compile_regex("eps+(0+1)*1", Alphabet(("0", "1")))


# ---------------------------------------------------------------------------
# Minimization, equivalence, enumeration
# ---------------------------------------------------------------------------

def _reachable(d: Dfa) -> list[int]:
    order = [d.start]
    seen = {d.start}
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for target in d.delta[q]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order


def _live(d: Dfa) -> set[int]:
    """States from which some accepting state is reachable."""
    incoming: dict[int, set[int]] = {q: set() for q in range(d.states)}
    for q in range(d.states):
        for target in d.delta[q]:
            incoming[target].add(q)
    live = set(d.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in incoming[q]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


def minimize(d: Dfa) -> Dfa:
    """
    Minimize by partition refinement over the reachable states, then renumber
    breadth-first from the start state in symbol order.
    """
    reach = _reachable(d)
    block = {q: int(q in d.accepting) for q in reach}
    count = len(set(block.values()))
    while True:
        ids: dict[tuple[int, ...], int] = {}
        refined: dict[int, int] = {}
        for q in reach:
            signature = (block[q],) + tuple(block[t] for t in d.delta[q])
            refined[q] = ids.setdefault(signature, len(ids))
        block = refined
        if len(ids) == count:
            break
        count = len(ids)

    representative: dict[int, int] = {}
    for q in reach:
        representative.setdefault(block[q], q)

    start = block[d.start]
    order = [start]
    number = {start: 0}
    queue = deque(order)
    while queue:
        c = queue.popleft()
        for target in d.delta[representative[c]]:
            t = block[target]
            if t not in number:
                number[t] = len(order)
                order.append(t)
                queue.append(t)

    delta = tuple(
        tuple(number[block[t]] for t in d.delta[representative[c]]) for c in order
    )
    accepting = frozenset(number[c] for c in order if representative[c] in d.accepting)
    return Dfa(d.alphabet, len(order), 0, accepting, delta)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """True iff both automata accept the same language."""
    _require_same_alphabet(d1, d2)
    return minimize(d1) == minimize(d2)


def distinguishing_word(d1: Dfa, d2: Dfa) -> Word | None:
    """Shortest (then least) word accepted by exactly one automaton, or None."""
    _require_same_alphabet(d1, d2)
    start = (d1.start, d2.start)
    paths: dict[tuple[int, int], Word] = {start: ()}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if (pair[0] in d1.accepting) != (pair[1] in d2.accepting):
            return paths[pair]
        for i, symbol in enumerate(d1.alphabet):
            nxt = (d1.delta[pair[0]][i], d2.delta[pair[1]][i])
            if nxt not in paths:
                paths[nxt] = paths[pair] + (symbol,)
                queue.append(nxt)
    return None


def enumerate_words(d: Dfa, max_len: int) -> list[Word]:
    """All accepted words of length <= max_len in length-then-lexicographic order."""
    if max_len < 0:
        raise LanguageError("max_len must be non-negative")
    live = _live(d)
    if d.start not in live:
        return []
    result: list[Word] = []
    layer: list[tuple[Word, int]] = [((), d.start)]
    for length in range(max_len + 1):
        result.extend(word for word, q in layer if q in d.accepting)
        if length == max_len:
            break
        layer = [
            (word + (symbol,), d.delta[q][i])
            for word, q in layer
            for i, symbol in enumerate(d.alphabet)
            if d.delta[q][i] in live
        ]
    return result


# ---------------------------------------------------------------------------
# Local testability
# ---------------------------------------------------------------------------

Profile = tuple[Word, Word, frozenset]


def _extend_profile(profile: Profile, symbol: str, k: int) -> Profile:
    prefix, tail, factors = profile
    if len(prefix) < k:
        prefix = prefix + (symbol,)
    tail = (tail + (symbol,))[-k:]
    if len(tail) == k:
        factors = factors | {tail}
    return prefix, tail, factors


def local_testability_witness(d: Dfa, k: int) -> tuple[Word, Word] | None:
    """
    Find two words with the same k-profile, one accepted and one rejected.

    The k-profile of a word of length >= k is its length-k prefix, its length-k
    suffix and its set of length-k factors; a shorter word is its own profile.
    Returns (accepted, rejected) or None when the language is locally k-testable.
    """
    if k < 1:
        raise LanguageError("k must be at least 1")
    initial = ((), (), frozenset()), d.start
    paths: dict[tuple[Profile, int], Word] = {initial: ()}
    seen: dict[Profile, dict[bool, Word]] = {}
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        profile, q = state
        witnesses = seen.setdefault(profile, {})
        witnesses.setdefault(q in d.accepting, paths[state])
        if len(witnesses) == 2:
            return witnesses[True], witnesses[False]
        for i, symbol in enumerate(d.alphabet):
            nxt = (_extend_profile(profile, symbol, k), d.delta[q][i])
            if nxt not in paths:
                paths[nxt] = paths[state] + (symbol,)
                queue.append(nxt)
    return None


def is_locally_testable(d: Dfa, k: int) -> bool:
    """True iff membership is determined by k-profiles."""
    return local_testability_witness(d, k) is None


# ---------------------------------------------------------------------------
# Syntactic monoid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SyntacticMonoid:
    """Transition monoid of a minimal DFA; element 0 is the identity."""
    elements: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    word_image: Mapping[str, int] = field(hash=False)
    automaton: Dfa

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, left: int, right: int) -> int:
        """Element for `left` followed by `right`."""
        return self.table[left][right]

    def image(self, word: str | Sequence[str]) -> int:
        element = self.identity
        for symbol in as_word(word):
            if symbol not in self.word_image:
                raise LanguageError(f"Symbol {symbol!r} not in alphabet")
            element = self.table[element][self.word_image[symbol]]
        return element

    def is_idempotent(self, element: int) -> bool:
        return self.table[element][element] == element

    def accepts_image(self, element: int) -> bool:
        d = self.automaton
        return self.elements[element][d.start] in d.accepting


def syntactic_monoid(d: Dfa) -> SyntacticMonoid:
    """Transition monoid of the minimal DFA of L(d)."""
    m = minimize(d)
    n = m.states
    identity = tuple(range(n))
    generators = [tuple(m.delta[q][i] for q in range(n)) for i in range(len(m.alphabet))]

    elements = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elements):
        current = elements[i]
        for generator in generators:
            product = tuple(generator[current[q]] for q in range(n))
            if product not in index:
                index[product] = len(elements)
                elements.append(product)
        i += 1

    table = tuple(
        tuple(index[tuple(right[left[q]] for q in range(n))] for right in elements)
        for left in elements
    )
    word_image = {symbol: index[generators[j]] for j, symbol in enumerate(m.alphabet)}
    logger.debug("Syntactic monoid of a %d-state DFA has %d elements", n, len(elements))
    return SyntacticMonoid(tuple(elements), table, word_image, m)


# ---------------------------------------------------------------------------
# Unbordered words and markers
# ---------------------------------------------------------------------------

def is_unbordered(word: Sequence[str]) -> bool:
    """True iff no proper non-empty prefix equals a suffix."""
    if len(word) == 0:
        raise LanguageError("The empty word has no borders to test")
    w = tuple(word)
    return all(w[:size] != w[-size:] for size in range(1, len(w)))


def are_mutually_unbordered(u: Sequence[str], v: Sequence[str]) -> bool:
    """No non-empty prefix of either word is a suffix of the other."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return is_unbordered(u)
    for size in range(1, min(len(u), len(v)) + 1):
        if u[:size] == v[-size:] or v[:size] == u[-size:]:
            return False
    return True


@dataclass(frozen=True)
class MarkerSearchResult:
    """Outcome of a marker-word search."""
    words: tuple[Word, ...] | None
    searched_max_len: int

    @property
    def found(self) -> bool:
        return self.words is not None


def _concatenations_accepted(d: Dfa, words: Sequence[Word], blocks: int) -> bool:
    layer: list[Word] = [()]
    for _ in range(blocks):
        layer = [prefix + word for prefix in layer for word in words]
        if not all(d.accepts(w) for w in layer):
            return False
    return True


def _mutually_unbordered_family(candidates: list[Word], count: int) -> tuple[Word, ...] | None:
    chosen: list[Word] = []

    def extend(start: int) -> bool:
        if len(chosen) == count:
            return True
        for i in range(start, len(candidates)):
            word = candidates[i]
            if all(are_mutually_unbordered(word, other) for other in chosen):
                chosen.append(word)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def find_marker_words(d: Dfa, count: int, max_len: int) -> MarkerSearchResult:
    """
    Search for `count` marker words of a common length <= max_len.

    The words are accepted, pairwise mutually unbordered, share one idempotent
    syntactic-monoid image (so every concatenation has that image and is accepted),
    and all concatenations of up to four of them are checked to be accepted.
    The shortest length wins; within a length, the lexicographically least family.
    """
    if count < 1:
        raise LanguageError("count must be at least 1")
    monoid = syntactic_monoid(d)
    words = enumerate_words(d, max_len)
    for length in range(1, max_len + 1):
        groups: dict[int, list[Word]] = {}
        for word in words:
            if len(word) == length and is_unbordered(word):
                groups.setdefault(monoid.image(word), []).append(word)
        for image, candidates in groups.items():
            if not monoid.is_idempotent(image):
                continue
            family = _mutually_unbordered_family(candidates, count)
            if family is not None and _concatenations_accepted(d, family, 4):
                logger.debug("Found %d marker words of length %d", count, length)
                return MarkerSearchResult(family, max_len)
    logger.warning("No %d marker words of length <= %d", count, max_len)
    return MarkerSearchResult(None, max_len)
