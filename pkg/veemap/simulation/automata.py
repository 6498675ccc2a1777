"""
Automata oracles - membership scans and table-filling equivalence.

Deliberately naive: every word is run through the automaton one by one, and
equivalence is decided by the classical pair-marking table rather than by
comparing minimized automata.
"""

from __future__ import annotations

import itertools

from veemap.engine.lang_engine import Dfa, LanguageError, Word


def scan_accepted(d: Dfa, max_len: int) -> list[Word]:
    """Accepted words of length <= max_len, by testing all of them."""
    found = []
    for length in range(max_len + 1):
        for word in itertools.product(d.alphabet.symbols, repeat=length):
            if d.accepts(word):
                found.append(word)
    return found


def _reachable(d: Dfa) -> set[int]:
    seen = {d.start}
    frontier = [d.start]
    while frontier:
        q = frontier.pop()
        for t in d.delta[q]:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return seen


def distinguishable_pairs(d: Dfa) -> set[frozenset[int]]:
    """Pairs of states told apart by some word (table filling)."""
    states = range(d.states)
    marked = {
        frozenset((p, q))
        for p, q in itertools.combinations(states, 2)
        if (p in d.accepting) != (q in d.accepting)
    }
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(states, 2):
            pair = frozenset((p, q))
            if pair in marked:
                continue
            for i in range(len(d.alphabet)):
                a, b = d.delta[p][i], d.delta[q][i]
                if a != b and frozenset((a, b)) in marked:
                    marked.add(pair)
                    changed = True
                    break
    return marked


def minimal_state_count(d: Dfa) -> int:
    """Number of classes of reachable states under indistinguishability."""
    reach = sorted(_reachable(d))
    marked = distinguishable_pairs(d)
    classes: list[int] = []
    for q in reach:
        if all(frozenset((q, r)) in marked for r in classes):
            classes.append(q)
    return len(classes)


def table_filling_equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Equivalence via the disjoint union: the two start states must be indistinguishable."""
    if d1.alphabet != d2.alphabet:
        raise LanguageError("Alphabets differ")
    offset = d1.states
    delta = d1.delta + tuple(tuple(t + offset for t in row) for row in d2.delta)
    accepting = d1.accepting | {q + offset for q in d2.accepting}
    union = Dfa(d1.alphabet, d1.states + d2.states, d1.start, accepting, delta)
    return frozenset((d1.start, d2.start + offset)) not in distinguishable_pairs(union)
