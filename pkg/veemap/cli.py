"""
Command-line front end.

    python cli.py hull --regex "eps+(0+1)*1" --sep 2
    python cli.py hull --pair --regex "eps+(0+1)*1" --left-suffix _A --right-suffix _B
    python cli.py verify --generator s --max-len 12
    python cli.py --seed 7 relator "t u T U" --orbits 20
    python cli.py bf --fixture thompson_hull
    python cli.py sweep

JSON goes to stdout with sorted keys; logs go to stderr. Exit codes: 0 pass,
1 counterexample, 2 refusal or bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from veemap.engine.bowenfranks_engine import BowenFranksError, bf_trivial_report
from veemap.engine.flow_engine import FlowError, orbit_fixed_check, simulate_embedding, transform
from veemap.engine.lang_engine import LanguageError, compile_regex, rename, thompson_language
from veemap.engine.subshift_engine import (
    HullRefusal,
    HullSpec,
    SubshiftError,
    build_hull,
    primitivity_exponent,
    to_dot,
    unused_symbols,
)
from veemap.engine.sweep_engine import SweepEngine, SweepError, parse_generator_word
from veemap.engine.thompson_engine import ThompsonError
from veemap.engine.veelike_engine import (
    VeelikeError,
    action_on_l,
    apply_rule,
    faithfulness_witness,
    language_words,
    verify_veelike,
)
from veemap.utils import codec
from veemap.utils.codec import CodecError
from veemap.utils.config import ConfigError, RunConfig, load_config
from veemap.utils.fixtures import load_generators, load_matrices, shift_matrix
from veemap.utils.rendering import orbit_svg

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_REFUSED = 2

INPUT_ERRORS = (
    BowenFranksError,
    CodecError,
    ConfigError,
    FlowError,
    LanguageError,
    OSError,
    SubshiftError,
    SweepError,
    ThompsonError,
    VeelikeError,
    json.JSONDecodeError,
)


def _emit(payload: Any) -> None:
    print(codec.dumps(payload))


def _read_json(path: str) -> Any:
    with open(path, "r") as f:
        return json.load(f)


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text)
    logger.info("Wrote %s", path)


# ---------------------------------------------------------------------------
# hull
# ---------------------------------------------------------------------------

def _hull_language(args: argparse.Namespace):
    if args.dfa:
        return codec.dfa_from_json(_read_json(args.dfa))
    return compile_regex(args.regex)


def cmd_hull(args: argparse.Namespace, config: RunConfig) -> int:
    language = _hull_language(args)
    if args.pair:
        right = compile_regex(args.right_regex) if args.right_regex else language
        left = rename(language, {s: s + args.left_suffix for s in language.alphabet})
        right = rename(right, {s: s + args.right_suffix for s in right.alphabet})
        spec = HullSpec(left, args.sep, right, args.inner_sep, reverse_left=args.reverse_left)
    else:
        spec = HullSpec(language, args.sep)

    try:
        shift = build_hull(spec)
    except HullRefusal as refusal:
        accepted, rejected = refusal.witness
        _emit({
            "refused": True,
            "component": refusal.component,
            "witness": {"accepted": list(accepted), "rejected": list(rejected)},
            "reason": str(refusal),
        })
        return EXIT_REFUSED

    exponent = primitivity_exponent(shift)
    payload = codec.shift_to_json(shift)
    payload.update({
        "mixing": exponent is not None,
        "primitivity_exponent": exponent,
        "unused_symbols": unused_symbols(shift),
    })
    _emit(payload)
    if args.dot:
        _write_text(args.dot, to_dot(shift))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_rule_file(data: dict, max_len: int) -> dict[str, Any]:
    rule = codec.rule_from_json(data)
    language = thompson_language()
    verdict = verify_veelike(rule, language, max_len)
    return {"passed": verdict.passed, "verification": codec.verification_to_json(verdict)}


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    max_len = args.max_len or config.max_len
    if args.generator:
        generators = load_generators()
        if args.generator not in generators.v:
            raise ConfigError(f"Unknown generator {args.generator!r}")
        data: dict = codec.v_element_to_json(generators.v[args.generator])
    else:
        data = _read_json(args.file)

    if "n" in data:
        report = _verify_rule_file(data, max_len)
        _emit(report)
        return EXIT_PASS if report["passed"] else EXIT_FAIL

    g = codec.v_element_from_json(data)
    rule = action_on_l(g)
    language = rule.language
    assert language is not None
    verdict = verify_veelike(rule, language, max_len, element=g)

    simulation: dict[str, Any] = {"passed": True, "checked": 0, "counterexample": None}
    for u in language_words(language, min(max_len, config.embedding_max_len)):
        simulation["checked"] += 1
        expected, got = apply_rule(rule, u), simulate_embedding(g, u)
        if expected != got:
            simulation.update(passed=False, counterexample={"word": u, "expected": expected, "got": got})
            break

    witness = faithfulness_witness(rule, language, max_len)
    faithful = g.is_identity() or witness is not None
    report = {
        "element": data,
        "n": rule.n,
        "verification": codec.verification_to_json(verdict),
        "simulation": simulation,
        "faithfulness": {"witness": witness, "required": not g.is_identity(), "passed": faithful},
    }
    report["passed"] = verdict.passed and simulation["passed"] and faithful
    _emit(report)
    return EXIT_PASS if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# relator
# ---------------------------------------------------------------------------

def cmd_relator(args: argparse.Namespace, config: RunConfig) -> int:
    generators = load_generators()
    engine = SweepEngine(config, generators.v, generators.relators)
    letters = parse_generator_word(args.word)
    reduced = engine.element(letters)
    if not reduced.is_identity():
        _emit({
            "word": args.word,
            "rejected": True,
            "reason": "word does not reduce to the identity",
            "reduced": codec.v_element_to_json(reduced),
        })
        return EXIT_REFUSED

    maps = [engine.induced_map(name, inverted) for name, inverted in letters]
    orbits = engine.random_orbits("cli", args.orbits or config.orbit_count)
    verdict = orbit_fixed_check(maps, orbits)
    _emit({
        "word": args.word,
        "seed": config.seed,
        "orbits": [codec.orbit_to_json(o) for o in orbits],
        "check": codec.orbit_check_to_json(verdict),
        "distortion": {"count": len(verdict.distorted), "orbits": list(verdict.distorted)},
        "passed": verdict.passed,
    })
    if args.svg and orbits:
        after = orbits[0]
        for m in reversed(maps):
            after = transform(m, after)
        _write_text(args.svg, orbit_svg([orbits[0], after], ["before", "after"]))
    return EXIT_PASS if verdict.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# bf
# ---------------------------------------------------------------------------

def cmd_bf(args: argparse.Namespace, config: RunConfig) -> int:
    if args.fixture:
        matrices = load_matrices()
        if args.fixture not in matrices:
            raise ConfigError(f"Unknown matrix fixture {args.fixture!r}")
        matrix = shift_matrix(matrices[args.fixture])
    else:
        matrix = codec.matrix_from_json(_read_json(args.file))
    report = bf_trivial_report([matrix])
    _emit(codec.report_to_json(report)[0])
    return EXIT_PASS


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    generators = load_generators()
    engine = SweepEngine(config, generators.v, generators.relators)
    runs = {
        "veelike": engine.veelike_sweep,
        "pair": engine.pair_sweep,
        "embedding": engine.embedding_sweep,
        "relators": engine.relator_sweep,
        "markers": engine.marker_sweep,
    }
    selected = args.only or list(runs)
    results = {}
    for name in selected:
        r = runs[name]()
        results[name] = {
            "passed": r.passed,
            "checked": r.checked,
            "failures": r.failures,
            "warnings": r.warnings,
        }
    passed = all(r["passed"] for r in results.values())
    _emit({"seed": config.seed, "sweeps": results, "passed": passed})
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veemap", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging on stderr")
    parser.add_argument("--config", default=None, help="YAML config (default: data/config.yaml)")
    parser.add_argument("--seed", type=int, default=None, help="Overrides VEEMAP_SEED and the config")
    sub = parser.add_subparsers(dest="command", required=True)

    hull = sub.add_parser("hull", help="Vertex shift of a language hull")
    source = hull.add_mutually_exclusive_group(required=True)
    source.add_argument("--regex", help='Regular expression, e.g. "eps+(0+1)*1"')
    source.add_argument("--dfa", help="DFA JSON file")
    hull.add_argument("--sep", default="#", help="Separator symbol")
    hull.add_argument("--pair", action="store_true", help="Pair hull over A, @, B, #")
    hull.add_argument("--right-regex", default=None, help="Right component (default: same as left)")
    hull.add_argument("--inner-sep", default="@")
    hull.add_argument("--left-suffix", default="_A")
    hull.add_argument("--right-suffix", default="_B")
    hull.add_argument("--reverse-left", action=argparse.BooleanOptionalAction, default=True)
    hull.add_argument("--dot", default=None, help="Also write the graph as DOT")
    hull.set_defaults(handler=cmd_hull)

    verify = sub.add_parser("verify", help="Veelike verification of a V element or a rule")
    target = verify.add_mutually_exclusive_group(required=True)
    target.add_argument("file", nargs="?", help="VElement or VeelikeRule JSON file")
    target.add_argument("--generator", help="Named generator from data/fixtures")
    verify.add_argument("--max-len", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    relator = sub.add_parser("relator", help="Orbit-level check of an identity word")
    relator.add_argument("word", help='Generator word, capitals are inverses, e.g. "t u T U"')
    relator.add_argument("--orbits", type=int, default=None)
    relator.add_argument("--svg", default=None, help="Write a before/after diagram of the first orbit")
    relator.set_defaults(handler=cmd_relator)

    bf = sub.add_parser("bf", help="Bowen-Franks group of a matrix")
    matrix = bf.add_mutually_exclusive_group(required=True)
    matrix.add_argument("file", nargs="?", help="Matrix JSON file")
    matrix.add_argument("--fixture", help="Named matrix from data/fixtures/matrices.yaml")
    bf.set_defaults(handler=cmd_bf)

    sweep = sub.add_parser("sweep", help="All seeded randomized sweeps")
    sweep.add_argument("--only", nargs="+", default=None,
                       choices=["veelike", "pair", "embedding", "relators", "markers"])
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config, {"seed": args.seed})
        return args.handler(args, config)
    except INPUT_ERRORS as exc:
        logger.error("%s", exc)
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_REFUSED
