"""
Mixing by its definition: for some n, any two admissible words u, v are
joined by a word w of length exactly n with u·w·v admissible.

Walks are followed symbol by symbol with plain sets; no matrix powers.
"""

from __future__ import annotations

from typing import Sequence


def _walks(matrix: Sequence[Sequence[int]], symbols: Sequence[int], length: int) -> list[tuple[int, ...]]:
    walks = [(s,) for s in symbols]
    for _ in range(length - 1):
        walks = [w + (t,) for w in walks for t in symbols if matrix[w[-1]][t]]
    return walks


def _core(matrix: Sequence[Sequence[int]]) -> list[int]:
    alive = set(range(len(matrix)))
    changed = True
    while changed:
        changed = False
        for s in sorted(alive):
            has_out = any(matrix[s][t] for t in alive)
            has_in = any(matrix[t][s] for t in alive)
            if not (has_out and has_in):
                alive.discard(s)
                changed = True
    return sorted(alive)


def _reach(matrix: Sequence[Sequence[int]], symbols: Sequence[int], source: int, steps: int) -> set[int]:
    frontier = {source}
    for _ in range(steps):
        frontier = {t for s in frontier for t in symbols if matrix[s][t]}
    return frontier


def brute_force_mixing(matrix: Sequence[Sequence[int]], max_gap: int = 12, word_len: int = 2) -> bool:
    """
    True iff some gap n <= max_gap connects every ordered pair of admissible
    words of length <= word_len. An empty shift counts as not mixing.
    """
    core = _core(matrix)
    if not core:
        return False
    words = [w for length in range(1, word_len + 1) for w in _walks(matrix, core, length)]
    for n in range(max_gap + 1):
        reach = {s: _reach(matrix, core, s, n + 1) for s in core}
        if all(v[0] in reach[u[-1]] for u in words for v in words):
            return True
    return False
