"""
Thompson Engine - Elements of Thompson's group V and Brin-Thompson 2V.

V elements are bijections between complete binary prefix codes; 2V elements
are bijections between partitions of the Cantor square into dyadic rectangles.
Binary words are plain strings over "01". Composition acts right to left:
compose(g, h) applies h first.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

Rect = tuple[str, str]


class ThompsonError(Exception):
    """Exception raised for malformed group elements and local-rule requests."""
    pass


def _check_binary(word: str) -> None:
    if not isinstance(word, str) or any(ch not in "01" for ch in word):
        raise ThompsonError(f"Not a binary word: {word!r}")


def binary_words(n: int) -> list[str]:
    """All binary words of length exactly n, in lexicographic order."""
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


def comparable(a: str, b: str) -> bool:
    """True iff one word is a prefix of the other."""
    return a.startswith(b) or b.startswith(a)


def kraft_sum(words: Iterable[str]) -> Fraction:
    return sum((Fraction(1, 2 ** len(w)) for w in words), Fraction(0))


def validate_prefix_code(words: Sequence[str]) -> None:
    """Raise ThompsonError unless `words` is a complete binary prefix code."""
    if not words:
        raise ThompsonError("Prefix code must not be empty")
    for word in words:
        _check_binary(word)
    ordered = sorted(words)
    for a, b in zip(ordered, ordered[1:]):
        if b.startswith(a):
            raise ThompsonError(f"Not prefix-free: {a!r} is a prefix of {b!r}")
    if kraft_sum(words) != 1:
        raise ThompsonError(f"Prefix code {list(words)} is not complete")


def _leaf_for(code: Iterable[str], word: str) -> str:
    for leaf in code:
        if word.startswith(leaf):
            return leaf
    raise ThompsonError(f"No leaf of the code prefixes {word!r}")


# ---------------------------------------------------------------------------
# Thompson's group V
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VElement:
    """
    Tree pair: the i-th domain leaf maps to the i-th range leaf.

    f(d·x) = r·x for the matching pair (d, r).
    """
    domain: tuple[str, ...]
    range: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "range", tuple(self.range))
        if len(self.domain) != len(self.range):
            raise ThompsonError(
                f"Domain has {len(self.domain)} leaves but range has {len(self.range)}"
            )
        validate_prefix_code(self.domain)
        validate_prefix_code(self.range)

    @classmethod
    def identity(cls) -> VElement:
        return cls(("",), ("",))

    @property
    def depth(self) -> int:
        return max(len(d) for d in self.domain)

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(zip(self.domain, self.range))

    def is_identity(self) -> bool:
        return v_reduce(self) == VElement.identity()


def v_reduce(g: VElement) -> VElement:
    """Canonical form: merge sibling pairs d0↦r0, d1↦r1 into d↦r until none remain."""
    table = dict(g.pairs)
    merged = True
    while merged:
        merged = False
        for d, r in table.items():
            if d.endswith("0") and r.endswith("0"):
                sibling = d[:-1] + "1"
                if table.get(sibling) == r[:-1] + "1":
                    del table[d], table[sibling]
                    table[d[:-1]] = r[:-1]
                    merged = True
                    break
    ordered = sorted(table.items())
    return VElement(tuple(d for d, _ in ordered), tuple(r for _, r in ordered))


def v_compose(g: VElement, h: VElement) -> VElement:
    """g∘h (h acts first), via the common refinement of h's range and g's domain."""
    pairs: list[tuple[str, str]] = []
    for d, r in h.pairs:
        for d2, r2 in g.pairs:
            if r.startswith(d2):
                pairs.append((d, r2 + r[len(d2):]))
            elif d2.startswith(r):
                pairs.append((d + d2[len(r):], r2))
    return v_reduce(VElement(tuple(d for d, _ in pairs), tuple(r for _, r in pairs)))


def v_inverse(g: VElement) -> VElement:
    return v_reduce(VElement(g.range, g.domain))


def v_product(elements: Sequence[VElement]) -> VElement:
    """Product e_0∘e_1∘...∘e_k; the rightmost factor acts first."""
    result = VElement.identity()
    for element in elements:
        result = v_compose(result, element)
    return result


def v_expand(g: VElement, depth: int) -> VElement:
    """Non-reduced presentation with every domain leaf at the given uniform depth."""
    if depth < g.depth:
        raise ThompsonError(f"Cannot expand a depth-{g.depth} element to depth {depth}")
    pairs = [
        (d + s, r + s)
        for d, r in g.pairs
        for s in binary_words(depth - len(d))
    ]
    return VElement(tuple(d for d, _ in pairs), tuple(r for _, r in pairs))


def v_local_rule(g: VElement, n: int) -> dict[str, str]:
    """
    The function F on {0,1}^n with f(u·x) = F(u)·x.

    Raises:
        ThompsonError: n is smaller than the longest domain leaf.
    """
    if n < g.depth:
        raise ThompsonError(f"Local rule depth {n} is below the element depth {g.depth}")
    table = dict(g.pairs)
    rule = {}
    for u in binary_words(n):
        d = _leaf_for(g.domain, u)
        rule[u] = table[d] + u[len(d):]
    return rule


def v_apply_word(g: VElement, word: str) -> str:
    """Image of a finite word at least as long as the element depth (its tail is carried)."""
    _check_binary(word)
    if len(word) < g.depth:
        raise ThompsonError(f"Word {word!r} is shorter than the element depth {g.depth}")
    d = _leaf_for(g.domain, word)
    return dict(g.pairs)[d] + word[len(d):]


@dataclass(frozen=True)
class EventuallyZero:
    """Point head·0^∞ of Cantor space; the canonical head is empty or ends in 1."""
    head: str = ""

    def __post_init__(self) -> None:
        _check_binary(self.head)
        if self.head.endswith("0"):
            raise ThompsonError(f"Head {self.head!r} is not canonical (ends in 0)")

    @classmethod
    def canonical(cls, word: str) -> EventuallyZero:
        _check_binary(word)
        return cls(word.rstrip("0"))

    def prefix(self, n: int) -> str:
        """First n digits of head·0^∞."""
        return (self.head + "0" * n)[:n]

    def padded(self, n: int) -> str:
        """The head followed by n zeros."""
        return self.head + "0" * n


def v_apply(g: VElement, x: EventuallyZero) -> EventuallyZero:
    return EventuallyZero.canonical(v_apply_word(g, x.padded(g.depth)))


def random_prefix_code(rng: random.Random, leaves: int, max_depth: int) -> tuple[str, ...]:
    """Complete prefix code with the given number of leaves, none deeper than max_depth."""
    if not 1 <= leaves <= 2 ** max_depth:
        raise ThompsonError(f"Cannot build {leaves} leaves within depth {max_depth}")
    code = [""]
    while len(code) < leaves:
        leaf = rng.choice([w for w in code if len(w) < max_depth])
        code.remove(leaf)
        code.extend((leaf + "0", leaf + "1"))
    return tuple(sorted(code))


def random_v_element(rng: random.Random, max_depth: int) -> VElement:
    """Reduced pseudo-random element whose tree pair has depth at most max_depth."""
    leaves = rng.randint(1, 2 ** max_depth)
    domain = random_prefix_code(rng, leaves, max_depth)
    targets = list(random_prefix_code(rng, leaves, max_depth))
    rng.shuffle(targets)
    return v_reduce(VElement(domain, tuple(targets)))


# ---------------------------------------------------------------------------
# Brin-Thompson 2V
# ---------------------------------------------------------------------------

def rect_measure(rect: Rect) -> Fraction:
    return Fraction(1, 2 ** (len(rect[0]) + len(rect[1])))


def rects_overlap(a: Rect, b: Rect) -> bool:
    return comparable(a[0], b[0]) and comparable(a[1], b[1])


def validate_rect_partition(rects: Sequence[Rect]) -> None:
    """Raise ThompsonError unless the rectangles tile the Cantor square exactly."""
    if not rects:
        raise ThompsonError("Rectangle partition must not be empty")
    for p, q in rects:
        _check_binary(p)
        _check_binary(q)
    for a, b in itertools.combinations(rects, 2):
        if rects_overlap(a, b):
            raise ThompsonError(f"Rectangles {a} and {b} overlap")
    if sum((rect_measure(r) for r in rects), Fraction(0)) != 1:
        raise ThompsonError("Rectangles do not cover the square")


@dataclass(frozen=True)
class TwoVElement:
    """
    Rectangle pair: the i-th domain rectangle maps to the i-th range rectangle.

    f((p·x, q·y)) = (p'·x, q'·y) for the matching pair ((p, q), (p', q')).
    """
    domain: tuple[Rect, ...]
    range: tuple[Rect, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple((p, q) for p, q in self.domain))
        object.__setattr__(self, "range", tuple((p, q) for p, q in self.range))
        if len(self.domain) != len(self.range):
            raise ThompsonError(
                f"Domain has {len(self.domain)} rectangles but range has {len(self.range)}"
            )
        validate_rect_partition(self.domain)
        validate_rect_partition(self.range)

    @classmethod
    def identity(cls) -> TwoVElement:
        return cls(((("", "")),), ((("", "")),))

    @property
    def depth(self) -> int:
        return max(max(len(p), len(q)) for p, q in self.domain)

    @property
    def pairs(self) -> tuple[tuple[Rect, Rect], ...]:
        return tuple(zip(self.domain, self.range))

    def is_identity(self) -> bool:
        return tv_equal(self, TwoVElement.identity())


def _from_pairs(pairs: Iterable[tuple[Rect, Rect]]) -> TwoVElement:
    ordered = sorted(pairs)
    return TwoVElement(tuple(d for d, _ in ordered), tuple(r for _, r in ordered))


def _sibling(rect: Rect, coordinate: int) -> Rect:
    parts = list(rect)
    parts[coordinate] = parts[coordinate][:-1] + "1"
    return parts[0], parts[1]


def _parent(rect: Rect, coordinate: int) -> Rect:
    parts = list(rect)
    parts[coordinate] = parts[coordinate][:-1]
    return parts[0], parts[1]


def tv_reduce(g: TwoVElement) -> TwoVElement:
    """Merge rectangle pairs that split the same coordinate on both sides."""
    table = dict(g.pairs)
    merged = True
    while merged:
        merged = False
        for d, r in table.items():
            for c in (0, 1):
                if d[c].endswith("0") and r[c].endswith("0"):
                    sibling = _sibling(d, c)
                    if table.get(sibling) == _sibling(r, c):
                        del table[d], table[sibling]
                        table[_parent(d, c)] = _parent(r, c)
                        merged = True
                        break
            if merged:
                break
    return _from_pairs(table.items())


def tv_compose(g: TwoVElement, h: TwoVElement) -> TwoVElement:
    """g∘h (h acts first), splitting rectangles along both coordinates as needed."""
    pairs = []
    for (d1, d2), (r1, r2) in h.pairs:
        for (e1, e2), (f1, f2) in g.pairs:
            if not (comparable(r1, e1) and comparable(r2, e2)):
                continue
            m1 = r1 if len(r1) >= len(e1) else e1
            m2 = r2 if len(r2) >= len(e2) else e2
            source = (d1 + m1[len(r1):], d2 + m2[len(r2):])
            target = (f1 + m1[len(e1):], f2 + m2[len(e2):])
            pairs.append((source, target))
    return tv_reduce(_from_pairs(pairs))


def tv_inverse(g: TwoVElement) -> TwoVElement:
    return tv_reduce(_from_pairs((r, d) for d, r in g.pairs))


def tv_refine(g: TwoVElement, m: int) -> dict[Rect, Rect]:
    """Presentation on the uniform depth-m grid, as a cell → image map."""
    if m < g.depth:
        raise ThompsonError(f"Grid depth {m} is below the element depth {g.depth}")
    grid = {}
    for (d1, d2), (r1, r2) in g.pairs:
        for s1 in binary_words(m - len(d1)):
            for s2 in binary_words(m - len(d2)):
                grid[(d1 + s1, d2 + s2)] = (r1 + s1, r2 + s2)
    return grid


def tv_equal(g: TwoVElement, h: TwoVElement) -> bool:
    """Equality as maps, decided on the common uniform grid."""
    m = max(g.depth, h.depth)
    return tv_refine(g, m) == tv_refine(h, m)


def tv_product(elements: Sequence[TwoVElement]) -> TwoVElement:
    result = TwoVElement.identity()
    for element in elements:
        result = tv_compose(result, element)
    return result


def _rect_for(g: TwoVElement, u: str, v: str) -> tuple[Rect, Rect]:
    for d, r in g.pairs:
        if u.startswith(d[0]) and v.startswith(d[1]):
            return d, r
    raise ThompsonError(f"No rectangle contains ({u!r}, {v!r})")


def tv_apply_words(g: TwoVElement, u: str, v: str) -> tuple[str, str]:
    """Image of a pair of finite words, each at least as long as the element depth."""
    _check_binary(u)
    _check_binary(v)
    if min(len(u), len(v)) < g.depth:
        raise ThompsonError(f"Pair ({u!r}, {v!r}) is shorter than the element depth {g.depth}")
    (d1, d2), (r1, r2) = _rect_for(g, u, v)
    return r1 + u[len(d1):], r2 + v[len(d2):]


def tv_local_rule(g: TwoVElement, n: int) -> dict[tuple[str, str], tuple[str, str]]:
    """
    The pair of functions (F_1, F_2) on ({0,1}^n)², as one table.

    f((u·x, v·y)) = (F_1(u, v)·x, F_2(u, v)·y).

    Raises:
        ThompsonError: n is smaller than the longest domain coordinate.
    """
    if n < g.depth:
        raise ThompsonError(f"Local rule depth {n} is below the element depth {g.depth}")
    words = binary_words(n)
    return {(u, v): tv_apply_words(g, u, v) for u in words for v in words}


def tv_apply(
    g: TwoVElement, point: tuple[EventuallyZero, EventuallyZero]
) -> tuple[EventuallyZero, EventuallyZero]:
    x, y = point
    u, v = tv_apply_words(g, x.padded(g.depth), y.padded(g.depth))
    return EventuallyZero.canonical(u), EventuallyZero.canonical(v)


def baker_map() -> TwoVElement:
    """f((a·x, y)) = (x, a·y)."""
    return TwoVElement((("0", ""), ("1", "")), (("", "0"), ("", "1")))


def random_rect_partition(rng: random.Random, pieces: int, max_depth: int) -> tuple[Rect, ...]:
    if not 1 <= pieces <= 4 ** max_depth:
        raise ThompsonError(f"Cannot build {pieces} rectangles within depth {max_depth}")
    rects: list[Rect] = [("", "")]
    while len(rects) < pieces:
        rect = rng.choice([r for r in rects if min(len(r[0]), len(r[1])) < max_depth])
        open_coordinates = [c for c in (0, 1) if len(rect[c]) < max_depth]
        c = rng.choice(open_coordinates)
        rects.remove(rect)
        for bit in "01":
            parts = list(rect)
            parts[c] += bit
            rects.append((parts[0], parts[1]))
    return tuple(sorted(rects))


def random_two_v_element(rng: random.Random, max_depth: int) -> TwoVElement:
    """Reduced pseudo-random 2V element with coordinates no longer than max_depth."""
    pieces = rng.randint(1, min(4 ** max_depth, 16))
    domain = random_rect_partition(rng, pieces, max_depth)
    targets = list(random_rect_partition(rng, pieces, max_depth))
    rng.shuffle(targets)
    return tv_reduce(TwoVElement(domain, tuple(targets)))


def prefix_codes(max_depth: int) -> list[tuple[str, ...]]:
    """Every complete prefix code with no word longer than max_depth."""
    if max_depth == 0:
        return [("",)]
    smaller = prefix_codes(max_depth - 1)
    codes = [("",)]
    for left in smaller:
        for right in smaller:
            codes.append(tuple(["0" + w for w in left] + ["1" + w for w in right]))
    return codes


def v_elements(max_depth: int) -> list[VElement]:
    """Every distinct element with a tree pair of depth at most max_depth."""
    seen: dict[VElement, None] = {}
    codes = prefix_codes(max_depth)
    for domain in codes:
        for target in codes:
            if len(target) != len(domain):
                continue
            for order in itertools.permutations(target):
                seen.setdefault(v_reduce(VElement(domain, order)), None)
    return list(seen)
