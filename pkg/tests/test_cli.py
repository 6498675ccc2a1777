"""Tests for the command-line front end."""

from __future__ import annotations

import json

import pytest

from veemap.cli import EXIT_FAIL, EXIT_PASS, EXIT_REFUSED, main
from veemap.utils.config import SEED_ENV

PAIR_HULL = [
    [1, 1, 1, 0, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1],
    [0, 1, 1, 0, 0, 0],
]


@pytest.fixture(autouse=True)
def no_env_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_hull(capsys):
    code, payload = run(capsys, "hull", "--regex", "eps+(0+1)*1")
    assert code == EXIT_PASS
    assert payload == {
        "symbols": ["0", "1", "#"],
        "matrix": [[1, 1, 0], [1, 1, 1], [1, 1, 1]],
        "mixing": True,
        "primitivity_exponent": 2,
        "unused_symbols": [],
    }


def test_hull_with_a_digit_separator(capsys):
    code, payload = run(capsys, "hull", "--regex", "eps+(0+1)*1", "--sep", "2")
    assert code == EXIT_PASS
    assert payload["symbols"] == ["0", "1", "2"]


def test_pair_hull(capsys):
    code, payload = run(capsys, "hull", "--pair", "--regex", "eps+(0+1)*1")
    assert code == EXIT_PASS
    assert payload["symbols"] == ["0_A", "1_A", "@", "0_B", "1_B", "#"]
    assert payload["matrix"] == PAIR_HULL
    assert payload["primitivity_exponent"] == 4


def test_hull_refusal(capsys):
    code, payload = run(capsys, "hull", "--regex", "(00)*")
    assert code == EXIT_REFUSED
    assert payload["refused"] is True
    assert payload["component"] == "single"
    assert set(payload["witness"]) == {"accepted", "rejected"}


def test_pair_hull_refusal_names_the_right_component(capsys):
    code, payload = run(capsys, "hull", "--pair", "--regex", "eps+(0+1)*1", "--right-regex", "(00)*")
    assert code == EXIT_REFUSED
    assert payload["component"] == "right"


def test_hull_from_a_dfa_file(capsys, tmp_path):
    from veemap.engine.lang_engine import thompson_language
    from veemap.utils.codec import dfa_to_json, dumps

    path = tmp_path / "l.json"
    path.write_text(dumps(dfa_to_json(thompson_language())))
    dot = tmp_path / "hull.dot"
    code, payload = run(capsys, "hull", "--dfa", str(path), "--dot", str(dot))
    assert code == EXIT_PASS
    assert payload["matrix"] == [[1, 1, 0], [1, 1, 1], [1, 1, 1]]
    assert dot.read_text().startswith("digraph hull {")


def test_bad_regex_is_an_input_error(capsys):
    code, payload = run(capsys, "hull", "--regex", "(0+1")
    assert code == EXIT_REFUSED
    assert payload["error"] == "LanguageError"


def test_verify_generator(capsys):
    code, payload = run(capsys, "verify", "--generator", "s", "--max-len", "8")
    assert code == EXIT_PASS
    assert payload["passed"] is True
    assert payload["n"] == 2
    assert payload["element"] == {"domain": ["0", "1"], "range": ["1", "0"]}
    assert payload["faithfulness"]["witness"] == ""
    assert payload["simulation"]["passed"] is True


def test_verify_unknown_generator(capsys):
    code, payload = run(capsys, "verify", "--generator", "z")
    assert code == EXIT_REFUSED
    assert payload["error"] == "ConfigError"


def test_verify_broken_rule_file(capsys, tmp_path):
    path = tmp_path / "rule.json"
    path.write_text(json.dumps({
        "n": 2,
        "long": {"00": "0", "01": "11", "10": "00", "11": "01"},
        "short": {"": "1", "1": ""},
    }))
    code, payload = run(capsys, "verify", str(path), "--max-len", "6")
    assert code == EXIT_FAIL
    assert payload["verification"]["reason"] == "not injective"


def test_verify_missing_file(capsys, tmp_path):
    code, payload = run(capsys, "verify", str(tmp_path / "absent.json"))
    assert code == EXIT_REFUSED
    assert payload["error"] == "FileNotFoundError"


def test_relator(capsys, tmp_path):
    svg = tmp_path / "orbit.svg"
    code, payload = run(capsys, "--seed", "7", "relator", "t u T U", "--orbits", "5", "--svg", str(svg))
    assert code == EXIT_PASS
    assert payload["passed"] is True
    assert payload["seed"] == 7
    assert len(payload["orbits"]) == 5
    assert payload["check"]["checked"] == 5
    assert svg.read_text().startswith("<svg")


def test_relator_output_is_reproducible(capsys):
    first = run(capsys, "--seed", "3", "relator", "c c c", "--orbits", "4")
    second = run(capsys, "--seed", "3", "relator", "c c c", "--orbits", "4")
    assert first == second


def test_env_seed_is_used(capsys, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "41")
    _, payload = run(capsys, "relator", "s s", "--orbits", "1")
    assert payload["seed"] == 41
    _, payload = run(capsys, "--seed", "5", "relator", "s s", "--orbits", "1")
    assert payload["seed"] == 5


def test_non_identity_relator_is_rejected(capsys):
    code, payload = run(capsys, "relator", "s")
    assert code == EXIT_REFUSED
    assert payload["rejected"] is True
    assert payload["reduced"] == {"domain": ["0", "1"], "range": ["1", "0"]}


def test_malformed_relator(capsys):
    code, payload = run(capsys, "relator", "s1")
    assert code == EXIT_REFUSED
    assert payload["error"] == "SweepError"


def test_bf_fixture(capsys):
    code, payload = run(capsys, "bf", "--fixture", "thompson_hull")
    assert code == EXIT_PASS
    assert payload["trivial"] is True
    assert payload["group"] == "0"
    assert payload["det_i_minus_a"] == -1


def test_bf_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[2, 1], [1, 2]]))
    code, payload = run(capsys, "bf", str(path))
    assert code == EXIT_PASS
    assert payload["group"] == "Z"
    assert payload["trivial"] is False


def test_bf_unknown_fixture(capsys):
    code, payload = run(capsys, "bf", "--fixture", "nope")
    assert code == EXIT_REFUSED
    assert payload["error"] == "ConfigError"


def test_bad_config_file(capsys, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("max_len: 0\n")
    code, payload = run(capsys, "--config", str(path), "bf", "--fixture", "pair_hull")
    assert code == EXIT_REFUSED
    assert payload["error"] == "ConfigError"


def test_sweep_subset(capsys):
    code, payload = run(capsys, "sweep", "--only", "markers", "embedding")
    assert code == EXIT_PASS
    assert set(payload["sweeps"]) == {"markers", "embedding"}
    assert payload["passed"] is True
    assert payload["seed"] == 2024
