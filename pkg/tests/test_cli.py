import json
import subprocess
import sys

import pytest

from golden_cases import CASES, golden_path
from retractlab import parse_polynomial
from retractlab.cli import main, run


def result_of(argv):
    code, text = run(argv)
    return code, json.loads(text)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, text = run(CASES[name])
    assert code == 0
    assert text + "\n" == golden_path(name).read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_verify_passes(name):
    code, doc = result_of(CASES[name] + ["--verify"])
    assert code == 0 and doc["verified"] is True


def test_every_command_has_a_golden():
    from retractlab.cli import COMMANDS

    assert set(COMMANDS) == set(CASES)


class TestExamples:
    def test_jacobian(self):
        code, doc = result_of(["jacobian", "--fx", "x", "--fy", "y+x^2"])
        assert code == 0 and doc["result"] == "1"

    def test_is_test_witness(self):
        code, doc = result_of(["is-test", "-p", "x + y*x"])
        assert code == 0 and doc["result"]["outcome"] == "no"
        witness = doc["result"]["certificate"]["witness"]
        assert parse_polynomial(witness["x"]) == parse_polynomial("x + y*x")
        assert witness["y"] == "0"

    def test_implicit_multiplication(self):
        code, doc = result_of(["apply", "--fx", "2x", "--fy", "y", "-p", "x"])
        assert code == 2
        assert doc["error"]["kind"] == "parse" and doc["error"]["position"] == 2  # 1-based, at the "x"

    def test_usage_error(self):
        code, doc = result_of(["jacobian", "--fx", "x"])
        assert code == 2 and doc["error"]["kind"] == "usage"

    def test_unknown_command(self):
        assert run(["frobnicate"])[0] == 2

    def test_constant_input(self):
        code, doc = result_of(["is-coordinate", "-p", "3"])
        assert code == 3 and doc["error"]["kind"] == "ConstantInput"

    def test_non_injective_probe(self):
        code, _ = result_of(["phi-infinity", "--fx", "x + y", "--fy", "(x + y)^2"])
        assert code == 3

    def test_no_is_exit_zero(self):
        code, doc = result_of(["is-automorphism", "--fx", "x^2", "--fy", "y"])
        assert code == 0 and doc["result"]["outcome"] == "no"

    def test_inconclusive_is_exit_zero(self):
        code, doc = result_of(["is-coordinate", "-p", "x + (y + x^2)^2", "--bound", "1"])
        assert code == 0 and doc["result"]["outcome"] == "inconclusive"
        assert doc["result"]["bounds"] == {"B_mate": 1}

    def test_not_in_subalgebra(self):
        code, doc = result_of(["in-subalgebra", "-p", "x", "-u", "x^2", "-v", "y^2"])
        assert code == 0 and doc["result"]["outcome"] == "no"

    def test_step_cap(self, monkeypatch):
        monkeypatch.setenv("RETRACTLAB_MAX_STEPS", "20")
        code, doc = result_of(["is-retract-generator", "-q", "x^2 + y^3"])
        assert code == 0
        assert doc["result"]["outcome"] == "inconclusive" and doc["result"]["reason"] == "step cap"


def _polynomials_in(node):
    keys = {"result", "certificate", "witness", "retraction", "x", "y", "g", "g1", "g2", "generator",
            "expr", "image", "first", "second"}
    if isinstance(node, dict):
        for key, value in node.items():
            if isinstance(value, str) and key in keys:
                yield key, value
            else:
                yield from _polynomials_in(value)
    elif isinstance(node, list):
        for item in node:
            yield from _polynomials_in(item)


@pytest.mark.parametrize("name", sorted(CASES))
def test_printed_polynomials_round_trip(name):
    _, doc = result_of(CASES[name])
    for key, text in _polynomials_in(doc["result"]):
        variables = ("t", "_") if key in ("g", "g1", "g2") else ("x", "y")
        if key == "expr":
            variables = ("s", "t")
        if key == "result" and name != "jacobian":
            continue
        assert parse_polynomial(text, variables).to_str(variables) == text


def test_main_prints(capsys):
    assert main(["jacobian", "--fx", "x", "--fy", "y"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == "1"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "retractlab", "jacobian", "--fx", "x^2", "--fy", "y"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"] == "2*x"
