"""
JSON codecs for engine values.

Every dump is built from plain dicts and lists so that
json.dumps(..., sort_keys=True) is byte-reproducible. Rationals are always
written "p/q", denominator included.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from veemap.engine.bowenfranks_engine import AbelianGroup, BowenFranksReport, IntMatrix
from veemap.engine.flow_engine import FlowOrbit, OrbitCheckResult, Tile
from veemap.engine.lang_engine import Alphabet, Dfa
from veemap.engine.subshift_engine import CrossValidationResult, VertexShift
from veemap.engine.thompson_engine import TwoVElement, VElement
from veemap.engine.veelike_engine import VeelikeRule, VerificationResult


class CodecError(ValueError):
    """Raised when a JSON document does not match the expected schema."""
    pass


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CodecError(f"Not a rational: {text!r}") from exc


def _require(data: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise CodecError(f"Missing keys: {', '.join(missing)}")


# --- lang -------------------------------------------------------------------

def dfa_to_json(d: Dfa) -> dict:
    return {
        "alphabet": list(d.alphabet.symbols),
        "states": d.states,
        "start": d.start,
        "accepting": sorted(d.accepting),
        "delta": [list(row) for row in d.delta],
    }


def dfa_from_json(data: dict) -> Dfa:
    _require(data, "alphabet", "states", "start", "accepting", "delta")
    return Dfa(
        Alphabet(tuple(data["alphabet"])),
        int(data["states"]),
        int(data["start"]),
        frozenset(int(q) for q in data["accepting"]),
        tuple(tuple(int(q) for q in row) for row in data["delta"]),
    )


# --- thompson -----------------------------------------------------------------

def v_element_to_json(g: VElement) -> dict:
    return {"domain": list(g.domain), "range": list(g.range)}


def v_element_from_json(data: dict) -> VElement:
    _require(data, "domain", "range")
    return VElement(tuple(data["domain"]), tuple(data["range"]))


def two_v_element_to_json(g: TwoVElement) -> dict:
    return {
        "domain": [list(rect) for rect in g.domain],
        "range": [list(rect) for rect in g.range],
    }


def two_v_element_from_json(data: dict) -> TwoVElement:
    _require(data, "domain", "range")
    return TwoVElement(
        tuple((p, q) for p, q in data["domain"]),
        tuple((p, q) for p, q in data["range"]),
    )


# --- veelike ----------------------------------------------------------------

def rule_to_json(rule: VeelikeRule) -> dict:
    return {"n": rule.n, "long": dict(rule.long_table), "short": dict(rule.short_table)}


def rule_from_json(data: dict) -> VeelikeRule:
    _require(data, "n", "long", "short")
    return VeelikeRule(int(data["n"]), dict(data["long"]), dict(data["short"]))


def verification_to_json(result: VerificationResult) -> dict:
    return {
        "passed": result.passed,
        "counterexample": list(result.counterexample) if result.counterexample else None,
        "reason": result.reason,
        "checked": result.checked,
    }


# --- subshift ---------------------------------------------------------------

def shift_to_json(v: VertexShift) -> dict:
    return {"symbols": list(v.alphabet.symbols), "matrix": [list(row) for row in v.matrix]}


def shift_from_json(data: dict) -> VertexShift:
    _require(data, "symbols", "matrix")
    return VertexShift.from_rows(data["symbols"], data["matrix"])


def cross_validation_to_json(result: CrossValidationResult) -> dict:
    return {
        "passed": result.passed,
        "counterexample": list(result.counterexample) if result.counterexample is not None else None,
        "in_hull": result.in_hull,
        "checked": result.checked,
    }


# --- flow -------------------------------------------------------------------

def orbit_to_json(o: FlowOrbit) -> dict:
    tiles = []
    for t in o.tiles:
        entry = {"s": t.symbol, "len": rational_to_str(t.length)}
        if t.pivot is not None:
            entry["pivot"] = rational_to_str(t.pivot)
        tiles.append(entry)
    return {"tiles": tiles, "base": {"tile": o.base_tile, "off": rational_to_str(o.base_offset)}}


def orbit_from_json(data: dict) -> FlowOrbit:
    _require(data, "tiles")
    tiles = tuple(
        Tile(
            t["s"],
            rational_from_str(t["len"]),
            rational_from_str(t["pivot"]) if "pivot" in t else None,
        )
        for t in data["tiles"]
    )
    base = data.get("base", {"tile": 0, "off": "0/1"})
    return FlowOrbit(tiles, int(base["tile"]), rational_from_str(base["off"]))


def orbit_check_to_json(result: OrbitCheckResult) -> dict:
    return {
        "passed": result.passed,
        "failed_orbit": result.failed_orbit,
        "before": list(result.before) if result.before is not None else None,
        "after": list(result.after) if result.after is not None else None,
        "reason": result.reason,
        "distorted": list(result.distorted),
        "checked": result.checked,
    }


# --- bowenfranks --------------------------------------------------------------

def matrix_from_json(data: dict | list) -> IntMatrix:
    """Accepts a bare row list or the shift schema with a "matrix" key."""
    rows = data["matrix"] if isinstance(data, dict) else data
    return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))


def group_to_json(group: AbelianGroup) -> dict:
    return {
        "bf_invariant_factors": list(group.invariant_factors),
        "group": str(group),
        "trivial": group.is_trivial,
    }


def report_to_json(report: BowenFranksReport) -> list[dict]:
    return [
        {
            "matrix": [list(row) for row in entry.matrix.rows],
            "bf_invariant_factors": list(entry.group.invariant_factors),
            "group": str(entry.group),
            "trivial": entry.trivial,
            "det_i_minus_a": entry.determinant,
            "determinant_consistent": entry.determinant_consistent,
        }
        for entry in report.entries
    ]
