"""
Flow Engine - Discrete mapping-torus orbits and induced rewriting.

A periodic flow orbit is a circle of tiles with exact rational lengths. A
veelike rule induces a map on such orbits: right after every separator the
piece "# u" is replaced by "# g·u", stretched uniformly so the piece keeps its
length. Anchors (separator left endpoints, or @ midpoints for pair rules)
never move, and neither does anything outside the rewritten pieces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from veemap.engine.lang_engine import (
    Dfa,
    Word,
    are_mutually_unbordered,
    rename,
    syntactic_monoid,
    thompson_language,
)
from veemap.engine.subshift_engine import HullSpec, SubshiftError, VertexShift, build_hull
from veemap.engine.thompson_engine import VElement
from veemap.engine.veelike_engine import PairVeelikeRule, VeelikeRule, action_on_l, in_thompson_language

logger = logging.getLogger(__name__)


class FlowError(Exception):
    """Exception raised for malformed or inadmissible orbits."""
    pass


class Mode(Enum):
    SINGLE = "single"
    PAIR = "pair"


@dataclass(frozen=True)
class Tile:
    """Labeled interval; pivot marks the anchor inside an @ tile (default: midpoint)."""
    symbol: str
    length: Fraction
    pivot: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", Fraction(self.length))
        if self.length <= 0:
            raise FlowError(f"Tile length must be positive, got {self.length}")
        if self.pivot is not None:
            object.__setattr__(self, "pivot", Fraction(self.pivot))
            if not 0 < self.pivot < self.length:
                raise FlowError(f"Pivot {self.pivot} outside tile of length {self.length}")

    @property
    def anchor_offset(self) -> Fraction:
        return self.pivot if self.pivot is not None else self.length / 2


def least_rotation(items: Sequence) -> tuple:
    """Lexicographically least rotation of a circular sequence."""
    seq = tuple(items)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


@dataclass(frozen=True)
class FlowOrbit:
    """Periodic orbit: tiles in circular order plus a basepoint (tile index, offset)."""
    tiles: tuple[Tile, ...]
    base_tile: int = 0
    base_offset: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "base_offset", Fraction(self.base_offset))
        if not self.tiles:
            raise FlowError("An orbit needs at least one tile")
        if not 0 <= self.base_tile < len(self.tiles):
            raise FlowError(f"Basepoint tile {self.base_tile} out of range")
        if not 0 <= self.base_offset < self.tiles[self.base_tile].length:
            raise FlowError(f"Basepoint offset {self.base_offset} outside its tile")

    @classmethod
    def from_symbols(
        cls, symbols: Sequence[str], lengths: Sequence[Fraction | int] | None = None
    ) -> FlowOrbit:
        """Orbit spelling `symbols`, unit lengths unless given."""
        if lengths is None:
            lengths = [1] * len(symbols)
        if len(lengths) != len(symbols):
            raise FlowError("Need one length per symbol")
        return cls(tuple(Tile(s, Fraction(x)) for s, x in zip(symbols, lengths)))

    @property
    def symbols(self) -> Word:
        return tuple(t.symbol for t in self.tiles)

    @property
    def circumference(self) -> Fraction:
        return sum((t.length for t in self.tiles), Fraction(0))

    def starts(self) -> list[Fraction]:
        """Start position of every tile, tile 0 at position 0."""
        positions = []
        total = Fraction(0)
        for t in self.tiles:
            positions.append(total)
            total += t.length
        return positions

    @property
    def basepoint(self) -> Fraction:
        return self.starts()[self.base_tile] + self.base_offset

    def locate(self, position: Fraction) -> tuple[int, Fraction]:
        """Tile index and offset of a position taken modulo the circumference."""
        position = position % self.circumference
        for i, start in enumerate(self.starts()):
            if start <= position < start + self.tiles[i].length:
                return i, position - start
        raise FlowError(f"Position {position} not on the orbit")

    def tile_cycle(self) -> tuple:
        """(symbol, length) pairs in canonical rotation; equal iff same tiling."""
        return least_rotation([(t.symbol, t.length) for t in self.tiles])


def symbol_sequence(o: FlowOrbit) -> Word:
    """Circular symbol word in canonical (least) rotation."""
    return least_rotation(o.symbols)


# ---------------------------------------------------------------------------
# Induced maps
# ---------------------------------------------------------------------------

def _inverse(code: Mapping[str, str]) -> dict[str, str]:
    return {v: k for k, v in code.items()}


@lru_cache(maxsize=64)
def _default_hull(spec: HullSpec) -> VertexShift:
    return build_hull(spec)


@dataclass(frozen=True)
class InducedMap:
    """
    Mapping-class element induced by a veelike rule.

    left_code and right_code translate orbit symbols to rule symbols (for
    example "0_A" to "0"); symbols missing from a code translate to themselves.
    Orbits are checked for admissibility against `shift`, or against the hull
    of the rule's language(s) when no shift is given. check_admissibility=False
    turns the check off.
    """
    rule: VeelikeRule | PairVeelikeRule
    separator: str = "#"
    inner_separator: str | None = None
    left_code: Mapping[str, str] = field(default_factory=dict, hash=False)
    right_code: Mapping[str, str] = field(default_factory=dict, hash=False)
    shift: VertexShift | None = field(default=None, compare=False, hash=False)
    check_admissibility: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.rule, PairVeelikeRule) and self.inner_separator is None:
            raise FlowError("A pair rule needs an inner separator")
        separators = {self.separator, self.inner_separator} - {None}
        rule_symbols = set(self.left_code) | set(self.right_code)
        if isinstance(self.rule, VeelikeRule):
            rule_symbols |= set(self.rule.alphabet)
        clash = separators & rule_symbols
        if clash:
            raise FlowError(f"Separators {sorted(clash)} also used as rule symbols")

    @property
    def mode(self) -> Mode:
        return Mode.PAIR if isinstance(self.rule, PairVeelikeRule) else Mode.SINGLE

    def hull(self) -> VertexShift:
        """
        The shift orbits must lie in: `shift` if given, else the hull built
        from the rule's language(s) renamed through the codes.

        Raises:
            FlowError: no hull can be built for the rule's language(s).
        """
        if self.shift is not None:
            return self.shift
        rule = self.rule
        if isinstance(rule, PairVeelikeRule):
            left, right = rule.languages or (thompson_language(), thompson_language())
            spec_args: tuple = (
                rename(left, _inverse(self.left_code)),
                self.separator,
                rename(right, _inverse(self.right_code)),
                self.inner_separator,
            )
        else:
            language = rule.language or thompson_language()
            if tuple(language.alphabet) != tuple(rule.alphabet):
                raise FlowError(
                    f"Rule alphabet {rule.alphabet} has no default hull; "
                    "pass shift= or check_admissibility=False"
                )
            spec_args = (rename(language, _inverse(self.left_code)), self.separator)
        try:
            return _default_hull(HullSpec(*spec_args))
        except SubshiftError as exc:
            raise FlowError(f"No hull for this map ({exc}); pass shift= or check_admissibility=False") from exc

    def check_admissible(self, o: FlowOrbit) -> None:
        """
        Raises:
            FlowError: the orbit uses a symbol outside the hull alphabet or
                contains a forbidden bigram (read circularly).
        """
        if not self.check_admissibility:
            return
        shift = self.hull()
        unknown = sorted(set(o.symbols) - set(shift.alphabet))
        if unknown:
            raise FlowError(f"Orbit uses symbols outside the hull alphabet: {unknown}")
        bad = shift.first_forbidden(o.symbols, circular=True)
        if bad is not None:
            raise FlowError(f"Orbit contains forbidden bigram {bad[0]}{bad[1]}")


def anchors(o: FlowOrbit, m: InducedMap) -> list[Fraction]:
    """
    Separator left endpoints (single mode) or @ anchor points (pair mode),
    measured from the basepoint (which rewriting never moves) and sorted.
    """
    starts = o.starts()
    if m.mode is Mode.SINGLE:
        points = [starts[i] for i, t in enumerate(o.tiles) if t.symbol == m.separator]
    else:
        points = [
            starts[i] + t.anchor_offset
            for i, t in enumerate(o.tiles)
            if t.symbol == m.inner_separator
        ]
    base, circumference = o.basepoint, o.circumference
    return sorted((p - base) % circumference for p in points)


def _uniform(symbols: Sequence[str], length: Fraction) -> list[Tile]:
    size = length / len(symbols)
    return [Tile(s, size) for s in symbols]


def _splice(o: FlowOrbit, pieces: Mapping[int, tuple[int, list[Tile]]]) -> FlowOrbit:
    """
    Replace runs of tiles; pieces maps a start index to (tile count, new tiles).

    New tiles must fill exactly the length of the run they replace, so every
    position outside the runs keeps its place; the basepoint keeps its position.
    """
    if not pieces:
        return o
    count = len(o.tiles)
    origin = min(pieces)
    starts = o.starts()
    base = (o.basepoint - starts[origin]) % o.circumference

    out: list[Tile] = []
    k = 0
    while k < count:
        index = (origin + k) % count
        if index in pieces:
            span, replacement = pieces[index]
            old = sum((o.tiles[(index + j) % count].length for j in range(span)), Fraction(0))
            new = sum((t.length for t in replacement), Fraction(0))
            if old != new:
                raise FlowError(f"Rewritten piece changes length {old} -> {new}")
            out.extend(replacement)
            k += span
        else:
            out.append(o.tiles[index])
            k += 1
    if k != count:
        raise FlowError("Rewritten pieces overlap")

    rebuilt = FlowOrbit(tuple(out))
    tile, offset = rebuilt.locate(base)
    return FlowOrbit(rebuilt.tiles, tile, offset)


def _block(symbols: Word, start: int, separator: str) -> list[int]:
    """Indices after the separator at `start`, up to (not including) the next separator."""
    count = len(symbols)
    indices = []
    j = (start + 1) % count
    while symbols[j] != separator:
        indices.append(j)
        j = (j + 1) % count
    return indices


def _rewrite_block(
    rule: VeelikeRule, word: str, strict: bool
) -> tuple[int, str] | None:
    """(symbols consumed, image) for a block, or None when it stays as it is."""
    if len(word) < rule.n:
        if word not in rule.short_table:
            if strict:
                raise FlowError(f"Block {word!r} has no short-table image")
            return None
        consumed, image = len(word), rule.short_table[word]
    else:
        prefix = word[:rule.n]
        if prefix not in rule.long_table:
            if strict:
                raise FlowError(f"Block prefix {prefix!r} has no long-table image")
            return None
        consumed, image = rule.n, rule.long_table[prefix]
    if image == word[:consumed]:
        return None
    return consumed, image


def apply(m: InducedMap, o: FlowOrbit) -> FlowOrbit:
    """
    Single-mode induced map.

    Raises:
        FlowError: the map is in pair mode, the orbit is inadmissible, or a
            block has no image.
    """
    if m.mode is not Mode.SINGLE:
        raise FlowError("apply needs a single-mode map; use pair_apply")
    rule = m.rule
    assert isinstance(rule, VeelikeRule)
    m.check_admissible(o)
    symbols = o.symbols
    if m.separator not in symbols:
        return o
    encode = _inverse(m.left_code)

    pieces: dict[int, tuple[int, list[Tile]]] = {}
    for i, symbol in enumerate(symbols):
        if symbol != m.separator:
            continue
        block = _block(symbols, i, m.separator)
        word = "".join(m.left_code.get(symbols[j], symbols[j]) for j in block)
        rewrite = _rewrite_block(rule, word, strict=True)
        if rewrite is None:
            continue
        consumed, image = rewrite
        span = consumed + 1
        length = sum((o.tiles[(i + j) % len(symbols)].length for j in range(span)), Fraction(0))
        new_symbols = [m.separator] + [encode.get(ch, ch) for ch in image]
        pieces[i] = (span, _uniform(new_symbols, length))
    return _splice(o, pieces)


def _read(symbols: Word, start: int, step: int, n: int, stop: str) -> list[int]:
    count = len(symbols)
    indices = []
    j = (start + step) % count
    while len(indices) < n and symbols[j] != stop:
        if j == start:
            raise FlowError("Read wrapped around the orbit without meeting a separator")
        indices.append(j)
        j = (j + step) % count
    return indices


def pair_apply(m: InducedMap, o: FlowOrbit) -> FlowOrbit:
    """
    Pair-mode induced map: around each @ read n symbols (or up to #) on both
    sides, rewrite through the pair rule and rescale each side independently
    so the @ anchor stays put.

    Raises:
        FlowError: the map is in single mode or the orbit is inadmissible.
    """
    if m.mode is not Mode.PAIR:
        raise FlowError("pair_apply needs a pair-mode map")
    rule = m.rule
    assert isinstance(rule, PairVeelikeRule)
    inner = m.inner_separator
    m.check_admissible(o)
    symbols = o.symbols
    if inner not in symbols:
        return o
    if m.separator not in symbols:
        raise FlowError("Pair orbit with an inner separator but no separator")
    encode_left = _inverse(m.left_code)
    encode_right = _inverse(m.right_code)
    count = len(symbols)

    pieces: dict[int, tuple[int, list[Tile]]] = {}
    for i, symbol in enumerate(symbols):
        if symbol != inner:
            continue
        left_idx = _read(symbols, i, -1, rule.n, m.separator)
        right_idx = _read(symbols, i, 1, rule.n, m.separator)
        for j in left_idx + right_idx:
            if symbols[j] == inner:
                raise FlowError("Two inner separators without a separator between them")
        p = "".join(m.left_code.get(symbols[j], symbols[j]) for j in left_idx)
        q = "".join(m.right_code.get(symbols[j], symbols[j]) for j in right_idx)
        key = (p, q)
        if key not in rule.table:
            raise FlowError(f"No pair-rule entry for {key}")
        image_left, image_right = rule.table[key]
        if (image_left, image_right) == key:
            continue

        at = o.tiles[i]
        left_length = sum((o.tiles[j].length for j in left_idx), Fraction(0)) + at.anchor_offset
        right_length = sum((o.tiles[j].length for j in right_idx), Fraction(0)) + (
            at.length - at.anchor_offset
        )
        half = Fraction(1, 2)
        left_scale = left_length / (len(image_left) + half)
        right_scale = right_length / (len(image_right) + half)
        new_tiles = [Tile(encode_left.get(ch, ch), left_scale) for ch in reversed(image_left)]
        new_tiles.append(Tile(inner, (left_scale + right_scale) * half, left_scale * half))
        new_tiles.extend(Tile(encode_right.get(ch, ch), right_scale) for ch in image_right)

        start = (i - len(left_idx)) % count
        pieces[start] = (len(left_idx) + 1 + len(right_idx), new_tiles)
    return _splice(o, pieces)


def transform(m: InducedMap, o: FlowOrbit) -> FlowOrbit:
    return apply(m, o) if m.mode is Mode.SINGLE else pair_apply(m, o)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def simulate_embedding(g: VElement, u: str) -> str:
    """Read g·u back off the induced map applied to the orbit "# u"."""
    if not in_thompson_language(u):
        raise FlowError(f"{u!r} is not in eps+(0+1)*1")
    rule = action_on_l(g)
    out = apply(InducedMap(rule), FlowOrbit.from_symbols(("#",) + tuple(u)))
    symbols = out.symbols
    i = symbols.index("#")
    rest = symbols[i + 1:] + symbols[:i]
    return "".join(rest)


@dataclass(frozen=True)
class OrbitCheckResult:
    """
    Orbit-fixing verdict. Length changes are reported in `distorted` (orbit
    indices) and never fail the check.
    """
    passed: bool
    failed_orbit: int | None = None
    before: Word | None = None
    after: Word | None = None
    reason: str = ""
    distorted: tuple[int, ...] = ()
    checked: int = 0


def orbit_fixed_check(maps: Sequence[InducedMap], orbits: Sequence[FlowOrbit]) -> OrbitCheckResult:
    """Apply maps right to left to every orbit; pass iff symbols, circumference and anchor counts survive."""
    distorted = []
    for index, orbit in enumerate(orbits):
        result = orbit
        for m in reversed(maps):
            result = transform(m, result)
        before, after = symbol_sequence(orbit), symbol_sequence(result)
        reason = ""
        if before != after:
            reason = "symbol sequence changed"
        elif orbit.circumference != result.circumference:
            reason = "circumference changed"
        elif maps and len(anchors(orbit, maps[0])) != len(anchors(result, maps[0])):
            reason = "anchor count changed"
        if reason:
            return OrbitCheckResult(False, index, before, after, reason, tuple(distorted), index + 1)
        if orbit.tile_cycle() != result.tile_cycle():
            distorted.append(index)
    if distorted:
        logger.debug("%d of %d orbits carry flow distortion", len(distorted), len(orbits))
    return OrbitCheckResult(True, distorted=tuple(distorted), checked=len(orbits))


# ---------------------------------------------------------------------------
# Marker coding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodedAlphabet:
    """Abstract symbols (including the separator) spelled as host marker words."""
    markers: Mapping[str, Word] = field(hash=False)
    separator: str = "#"
    language: Dfa | None = field(default=None, compare=False, hash=False)

    def __post_init__(self) -> None:
        markers = {s: tuple(w) for s, w in self.markers.items()}
        object.__setattr__(self, "markers", markers)
        if self.separator not in markers:
            raise FlowError(f"No marker for the separator {self.separator!r}")
        lengths = {len(w) for w in markers.values()}
        if len(lengths) != 1 or 0 in lengths:
            raise FlowError("Marker words must be non-empty and share one length")
        words = list(markers.values())
        if len(set(words)) != len(words):
            raise FlowError("Marker words must be distinct")
        for i, u in enumerate(words):
            for v in words[i:]:
                if not are_mutually_unbordered(u, v):
                    raise FlowError(f"Markers {u} and {v} are not mutually unbordered")
        if self.language is not None:
            monoid = syntactic_monoid(self.language)
            if len({monoid.image(w) for w in words}) != 1:
                raise FlowError("Markers do not share a syntactic-monoid image")

    @property
    def length(self) -> int:
        return len(next(iter(self.markers.values())))

    @property
    def decode(self) -> dict[Word, str]:
        return {w: s for s, w in self.markers.items()}

    def encode_word(self, symbols: Sequence[str]) -> Word:
        return tuple(h for s in symbols for h in self.markers[s])

    def encode_orbit(self, symbols: Sequence[str]) -> FlowOrbit:
        return FlowOrbit.from_symbols(self.encode_word(symbols))


def marker_occurrences(c: CodedAlphabet, symbols: Word) -> dict[int, str]:
    """Circular start positions of marker words in a host word."""
    k, count = c.length, len(symbols)
    if count < k:
        return {}
    decode = c.decode
    found = {}
    for i in range(count):
        window = tuple(symbols[(i + j) % count] for j in range(k))
        if window in decode:
            found[i] = decode[window]
    return found


def _marker_runs(occurrences: Mapping[int, str], k: int, count: int) -> list[tuple[list[int], bool]]:
    """Maximal chains of back-to-back occurrences; the flag marks a chain closing the circle."""
    starts = sorted(i for i in occurrences if (i - k) % count not in occurrences)
    if not starts:
        first = min(occurrences)
        return [([(first + t * k) % count for t in range(count // k)], True)]
    runs = []
    for s in starts:
        chain = [s]
        while (chain[-1] + k) % count in occurrences and len(chain) * k < count:
            chain.append((chain[-1] + k) % count)
        runs.append((chain, False))
    return runs


def coded_apply(m: InducedMap, c: CodedAlphabet, o: FlowOrbit) -> FlowOrbit:
    """
    Induced map acting on marker-coded content of a host orbit.

    Content before the first separator marker of a run is left alone; a run
    cut on the right is rewritten as if a separator marker began at the cut.
    Short blocks without an image, and everything outside marker runs, are fixed.
    """
    if m.mode is not Mode.SINGLE:
        raise FlowError("coded_apply needs a single-mode map")
    rule = m.rule
    assert isinstance(rule, VeelikeRule)
    symbols = o.symbols
    count, k = len(symbols), c.length
    occurrences = marker_occurrences(c, symbols)
    if not occurrences:
        return o

    pieces: dict[int, tuple[int, list[Tile]]] = {}
    for chain, circular in _marker_runs(occurrences, k, count):
        decoded = [occurrences[p] for p in chain]
        size = len(decoded)
        for t, symbol in enumerate(decoded):
            if symbol != c.separator:
                continue
            block: list[str] = []
            j = t + 1
            while True:
                if circular:
                    j %= size
                    if j == t:
                        break
                elif j >= size:
                    break
                if decoded[j] == c.separator:
                    break
                block.append(decoded[j])
                j += 1
            rewrite = _rewrite_block(rule, "".join(block), strict=False)
            if rewrite is None:
                continue
            consumed, image = rewrite
            span = (consumed + 1) * k
            start = chain[t]
            length = sum((o.tiles[(start + j) % count].length for j in range(span)), Fraction(0))
            host = c.encode_word([c.separator] + list(image))
            pieces[start] = (span, _uniform(host, length))
    return _splice(o, pieces)


def decode_orbit(c: CodedAlphabet, o: FlowOrbit) -> Word:
    """Abstract symbols of the marker occurrences, in circular order from the first."""
    occurrences = marker_occurrences(c, o.symbols)
    return tuple(occurrences[i] for i in sorted(occurrences))
