"""
Pointwise oracle - V and 2V acting on long finite words.

Stands in for the action on eventually-zero sequences: a language word w is
turned into w·0^tail, pushed through the tree pair leaf by leaf, and the
trailing zeros are stripped again. No local rules or tables are involved.
"""

from __future__ import annotations

from veemap.engine.thompson_engine import ThompsonError, TwoVElement, VElement


class PointwiseOracle:
    """
    Conjugated action through w ↦ w·0^tail.

    The tail must exceed every tree-pair depth under test.
    """

    def __init__(self, tail: int = 64) -> None:
        """
        Args:
            tail: Number of zeros appended before acting.
        """
        self.tail = tail

    def _act(self, pairs, word: str) -> str:
        for d, r in pairs:
            if word.startswith(d):
                return r + word[len(d):]
        raise ThompsonError(f"No leaf prefixes {word[:16]!r}...")

    def act(self, g: VElement, word: str) -> str:
        """g·w for w in eps+(0+1)*1."""
        image = self._act(g.pairs, word + "0" * self.tail)
        return image.rstrip("0")

    def act_pair(self, g: TwoVElement, left: str, right: str) -> tuple[str, str]:
        """g·(u, v) for u, v in eps+(0+1)*1."""
        x = left + "0" * self.tail
        y = right + "0" * self.tail
        for (d1, d2), (r1, r2) in g.pairs:
            if x.startswith(d1) and y.startswith(d2):
                return (r1 + x[len(d1):]).rstrip("0"), (r2 + y[len(d2):]).rstrip("0")
        raise ThompsonError(f"No rectangle contains ({left!r}, {right!r})")

    def act_infinite(self, g: VElement, word: str) -> str:
        """Image of an arbitrary finite word, tail carried verbatim (length >= depth)."""
        return self._act(g.pairs, word)
