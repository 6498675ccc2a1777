"""
Sweep Engine - Seeded randomized checks across the engines.

Each sweep draws its own random.Random from the configured seed, so sweeps are
reproducible one by one and independent of the order they run in.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from veemap.engine.flow_engine import (
    CodedAlphabet,
    FlowOrbit,
    InducedMap,
    Tile,
    apply,
    coded_apply,
    decode_orbit,
    least_rotation,
    orbit_fixed_check,
    simulate_embedding,
    symbol_sequence,
)
from veemap.engine.lang_engine import Alphabet, find_marker_words, full_dfa, thompson_language
from veemap.engine.subshift_engine import HullSpec, VertexShift, hull_vertex_shift
from veemap.engine.thompson_engine import (
    VElement,
    random_two_v_element,
    random_v_element,
    v_inverse,
    v_product,
    v_reduce,
)
from veemap.engine.veelike_engine import (
    action_on_l,
    apply_rule,
    language_words,
    pair_action,
    verify_pair_veelike,
    verify_veelike,
)
from veemap.utils.config import RunConfig

logger = logging.getLogger(__name__)


class SweepError(Exception):
    """Exception raised for malformed generator words."""
    pass


@dataclass
class SweepResult:
    """Result of one sweep; failures hold JSON-ready counterexample records."""
    name: str
    passed: bool = True
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def fail(self, record: dict[str, Any]) -> None:
        self.passed = False
        self.failures.append(record)


def parse_generator_word(text: str) -> list[tuple[str, bool]]:
    """
    "t u T U" (or "tuTU") as (name, inverted) letters; capitals are inverses.

    Raises:
        SweepError: a character that is not a letter.
    """
    letters = []
    for ch in text.replace(" ", ""):
        if not ch.isalpha():
            raise SweepError(f"Generator words use letters only, got {ch!r}")
        letters.append((ch.lower(), ch.isupper()))
    return letters


def inverse_word(letters: Sequence[tuple[str, bool]]) -> list[tuple[str, bool]]:
    return [(name, not inverted) for name, inverted in reversed(letters)]


def format_word(letters: Sequence[tuple[str, bool]]) -> str:
    return " ".join(name.upper() if inverted else name for name, inverted in letters)


class SweepEngine:
    """
    Engine for the randomized sweeps.

    Runs:
    - veelike: action_on_l of random V elements passes verify_veelike
    - pair: pair_action of random 2V elements passes verify_pair_veelike
    - embedding: simulate_embedding agrees with apply_rule; generators move some orbit
    - relators: words equal to the identity fix every sampled orbit
    - markers: coded_apply on marker-encoded orbits matches the plain induced map
    """

    def __init__(
        self,
        config: RunConfig | None = None,
        generators: Mapping[str, VElement] | None = None,
        relators: Sequence[str] | None = None,
    ) -> None:
        """
        Args:
            config: Sweep bounds and seed; defaults to RunConfig().
            generators: V generators by single-letter name; defaults to data/fixtures.
            relators: Identity words seeding relator_words; defaults to data/fixtures.
                Words that use an unknown generator are dropped.
        """
        self.config = config or RunConfig()
        if generators is None or relators is None:
            # Import here to avoid circular imports
            from veemap.utils.fixtures import load_generators

            fixture = load_generators()
            generators = fixture.v if generators is None else generators
            relators = fixture.relators if relators is None else relators
        self.generators = dict(generators)
        self.relators = tuple(r for r in relators if self._known(r))
        dropped = len(relators) - len(self.relators)
        if dropped:
            logger.debug("Dropped %d relator(s) over unknown generators", dropped)
        self.language = thompson_language()
        self._rules: dict[str, Any] = {}
        self._hull: VertexShift | None = None

    def _rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.config.seed}:{salt}")

    # --- generator words ------------------------------------------------------

    def element(self, letters: Sequence[tuple[str, bool]]) -> VElement:
        """Reduced product of a generator word; the rightmost letter acts first."""
        factors = []
        for name, inverted in letters:
            if name not in self.generators:
                raise SweepError(f"Unknown generator {name!r}")
            g = self.generators[name]
            factors.append(v_inverse(g) if inverted else g)
        return v_reduce(v_product(factors))

    def induced_map(self, name: str, inverted: bool = False) -> InducedMap:
        key = name.upper() if inverted else name
        if key not in self._rules:
            g = self.generators[name]
            self._rules[key] = action_on_l(v_inverse(g) if inverted else g)
        return InducedMap(self._rules[key], shift=self.hull)

    @property
    def hull(self) -> VertexShift:
        if self._hull is None:
            self._hull = hull_vertex_shift(HullSpec(self.language, separator="#"))
        return self._hull

    def relator_words(self, count: int | None = None, max_length: int | None = None) -> list[str]:
        """
        Pseudo-random words equal to the identity in V.

        Half are base relators conjugated by random words, half are w·w⁻¹ for
        random w; none is longer than max_length letters.
        """
        count = count or self.config.relator_count
        max_length = max_length or self.config.relator_length
        rng = self._rng("relators")
        names = sorted(self.generators)
        base = [parse_generator_word(r) for r in self.relators]

        def random_letters(n: int) -> list[tuple[str, bool]]:
            return [(rng.choice(names), rng.random() < 0.5) for _ in range(n)]

        words = []
        while len(words) < count:
            if base and len(words) % 2 == 0:
                relator = rng.choice(base)
                room = (max_length - len(relator)) // 2
                x = random_letters(rng.randint(0, max(room, 0)))
                letters = x + relator + inverse_word(x)
            else:
                w = random_letters(rng.randint(1, max_length // 2))
                letters = w + inverse_word(w)
            words.append(format_word(letters))
        return words

    def _known(self, text: str) -> bool:
        return all(name in self.generators for name, _ in parse_generator_word(text))

    # --- orbits ---------------------------------------------------------------

    def random_orbit(self, rng: random.Random) -> FlowOrbit:
        """Admissible hull orbit: blocks "# u" with u in the language, random rational lengths."""
        budget = self.config.max_tiles
        blocks = rng.randint(1, self.config.orbit_blocks)
        symbols: list[str] = []
        for b in range(blocks):
            room = budget - len(symbols) - 1 - (blocks - b - 1)
            if room < 0:
                break
            size = rng.randint(0, room)
            if size == 0:
                word = ""
            else:
                word = "".join(rng.choice("01") for _ in range(size - 1)) + "1"
            symbols.append("#")
            symbols.extend(word)
        tiles = tuple(Tile(s, Fraction(rng.randint(1, 4), rng.randint(1, 3))) for s in symbols)
        return FlowOrbit(tiles)

    def random_orbits(self, salt: str, count: int | None = None) -> list[FlowOrbit]:
        rng = self._rng(f"orbits:{salt}")
        return [self.random_orbit(rng) for _ in range(count or self.config.orbit_count)]

    # --- sweeps ---------------------------------------------------------------

    def veelike_sweep(self) -> SweepResult:
        """action_on_l of random V elements is a bijection of the language."""
        from veemap.simulation.pointwise import PointwiseOracle

        cfg = self.config
        rng = self._rng("veelike")
        oracle = PointwiseOracle()
        result = SweepResult("veelike")
        sample = language_words(self.language, min(cfg.max_len, 8))
        for index in range(cfg.element_count):
            g = random_v_element(rng, cfg.max_depth)
            rule = action_on_l(g)
            verdict = verify_veelike(rule, self.language, cfg.max_len, element=g)
            result.checked += verdict.checked
            if not verdict.passed:
                result.fail({
                    "element": index,
                    "domain": list(g.domain),
                    "range": list(g.range),
                    "counterexample": list(verdict.counterexample or ()),
                    "reason": verdict.reason,
                })
                continue
            for w in sample:
                if apply_rule(rule, w) != oracle.act(g, w):
                    result.fail({"element": index, "word": w, "reason": "disagrees with the pointwise action"})
                    break
        logger.debug("Veelike sweep checked %d words", result.checked)
        return result

    def pair_sweep(self) -> SweepResult:
        """pair_action of random 2V elements is a bijection of L x L."""
        cfg = self.config
        rng = self._rng("pair")
        result = SweepResult("pair")
        for index in range(cfg.pair_count):
            g = random_two_v_element(rng, cfg.pair_depth)
            verdict = verify_pair_veelike(pair_action(g), self.language, self.language, cfg.pair_max_len)
            result.checked += verdict.checked
            if not verdict.passed:
                result.fail({
                    "element": index,
                    "domain": [list(r) for r in g.domain],
                    "range": [list(r) for r in g.range],
                    "counterexample": list(verdict.counterexample or ()),
                    "reason": verdict.reason,
                })
        logger.debug("Pair sweep checked %d pairs", result.checked)
        return result

    def embedding_sweep(self) -> SweepResult:
        """Orbit simulation agrees with the rule, and each non-identity generator moves some "# u"."""
        max_len = self.config.embedding_max_len
        words = language_words(self.language, max_len)
        result = SweepResult("embedding")
        for name in sorted(self.generators):
            g = self.generators[name]
            rule = action_on_l(g)
            for u in words:
                result.checked += 1
                expected = apply_rule(rule, u)
                got = simulate_embedding(g, u)
                if got != expected:
                    result.fail({"generator": name, "word": u, "expected": expected, "got": got})
            if g.is_identity():
                continue
            moved = self._moved_orbit(rule, words)
            if moved is None:
                result.fail({"generator": name, "reason": f"no orbit '# u' with |u| <= {max_len} moves"})
            else:
                logger.debug("Generator %s moves the orbit # %s", name, moved)
        return result

    def _moved_orbit(self, rule, words: Sequence[str]) -> str | None:
        m = InducedMap(rule)
        for u in words:
            orbit = FlowOrbit.from_symbols(("#",) + tuple(u))
            if symbol_sequence(apply(m, orbit)) != symbol_sequence(orbit):
                return u
        return None

    def relator_sweep(self, words: Sequence[str] | None = None) -> SweepResult:
        """Every identity word fixes the symbol sequence of every sampled orbit."""
        words = list(words) if words is not None else self.relator_words()
        result = SweepResult("relators")
        distorted = 0
        for index, text in enumerate(words):
            letters = parse_generator_word(text)
            if not self.element(letters).is_identity():
                result.fail({"word": text, "reason": "does not reduce to the identity"})
                continue
            maps = [self.induced_map(name, inverted) for name, inverted in letters]
            orbits = self.random_orbits(str(index))
            verdict = orbit_fixed_check(maps, orbits)
            result.checked += verdict.checked
            distorted += len(verdict.distorted)
            if not verdict.passed:
                result.fail({
                    "word": text,
                    "orbit": verdict.failed_orbit,
                    "before": list(verdict.before or ()),
                    "after": list(verdict.after or ()),
                    "reason": verdict.reason,
                })
        if distorted:
            result.warnings.append(f"{distorted} orbit(s) came back with redistributed tile lengths")
        return result

    def marker_sweep(self, max_len: int = 8) -> SweepResult:
        """Three markers over the full 2-shift carry the swap action faithfully."""
        result = SweepResult("markers")
        host = full_dfa(Alphabet(("0", "1")))
        search = find_marker_words(host, 3, max_len)
        if not search.found:
            result.fail({"reason": f"no marker words up to length {max_len}"})
            return result
        coding = CodedAlphabet(dict(zip(("#", "0", "1"), search.words)), language=host)
        for name in sorted(self.generators):
            m = InducedMap(action_on_l(self.generators[name]))
            for u in language_words(self.language, 3):
                abstract = ("#",) + tuple(u)
                result.checked += 1
                expected = symbol_sequence(apply(m, FlowOrbit.from_symbols(abstract)))
                coded = coded_apply(m, coding, coding.encode_orbit(abstract))
                got = least_rotation(decode_orbit(coding, coded))
                if got != expected:
                    result.fail({"generator": name, "word": u, "expected": list(expected), "got": list(got)})
        return result

    def run_all(self) -> dict[str, SweepResult]:
        results = {}
        for sweep in (self.veelike_sweep, self.pair_sweep, self.embedding_sweep,
                      self.relator_sweep, self.marker_sweep):
            r = sweep()
            logger.info("Sweep %s: %s (%d checks)", r.name, "pass" if r.passed else "FAIL", r.checked)
            results[r.name] = r
        return results
