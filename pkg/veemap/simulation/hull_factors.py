"""
Brute-force factor language of hull configurations.

A hull configuration is a bi-infinite concatenation of component words, each
followed by its separator, cycling through the components:

    single:  ... w # w' # w'' # ...
    pair:    ... u @ v # u' @ v' # ...

The oracle lists every factor of length <= m by walking such concatenations
directly; it knows nothing about adjacency matrices.
"""

from __future__ import annotations

from typing import Sequence

Word = tuple[str, ...]


def _factors(words: Sequence[Word], m: int) -> set[Word]:
    found: set[Word] = {()}
    for w in words:
        for start in range(len(w)):
            for stop in range(start + 1, min(len(w), start + m) + 1):
                found.add(w[start:stop])
    return found


def hull_factors(components: Sequence[tuple[Sequence[Word], str]], m: int) -> set[Word]:
    """
    Factors of length <= m of hull configurations.

    Args:
        components: (words, separator) per component, in cyclic order. Word lists
            should run a little past m so that factors of long words are reached.
        m: maximum factor length.

    Returns:
        Set of factors, including the empty word.
    """
    if any(not words for words, _ in components):
        return {()}

    count = len(components)
    factors: set[Word] = set()
    prefixes: list[set[Word]] = []
    suffixes: list[set[Word]] = []
    full: list[list[Word]] = []
    for words, _ in components:
        factors |= _factors(words, m)
        prefixes.append({w[:j] for w in words for j in range(min(len(w), m) + 1)})
        suffixes.append({w[len(w) - j:] for w in words for j in range(min(len(w), m) + 1)})
        full.append([w for w in words if len(w) < m])

    def extend(current: Word, i: int) -> None:
        # current ends with the separator of component i
        j = (i + 1) % count
        for p in prefixes[j]:
            if len(current) + len(p) <= m:
                factors.add(current + p)
        separator = components[j][1]
        for w in full[j]:
            nxt = current + w + (separator,)
            if len(nxt) <= m:
                extend(nxt, j)

    for i, (_, separator) in enumerate(components):
        for s in suffixes[i]:
            start = s + (separator,)
            if len(start) <= m:
                extend(start, i)

    return factors
