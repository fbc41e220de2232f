import json
from pathlib import Path

import pytest

from parcoh.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

KZ2_GLOBAL_F3 = '{"field":"F3","hopf":"kG:Z2","action":{"subgroup":["e","a"]}}'
KLEIN_Q = '{"field":"Q","hopf":"dual:Z2xZ2","action":{"subgroup":["e","a"]},"cocycle":"klein4(1/4, 1/4)"}'
KZ4_HALF = '{"field":"Q","hopf":"kG:Z4","action":{"subgroup":["e","a^2"]}}'

CASES = {
    "cohomology_kz2_f3": (["cohomology", "--n", "1", KZ2_GLOBAL_F3], 0),
    "klein4_quarter": (["klein4", "--x", "1/4", "--xbar", "1/4"], 0),
    "klein4_zero": (["klein4", "--x", "0", "--xbar", "0"], 1),
    "crossed_product_corrupted": (["crossed-product", "--check", "assoc", str(DATA / "corrupted_cocycle_kv4.json")], 1),
    "classify_kz6": (["classify-actions", '{"field":"Q","hopf":"kG:Z6","action":"global"}'], 0),
    "cocycle_check_kz4": (["cocycle-check", "--n", "1", "--cochain", str(DATA / "kz4_character.json"), KZ4_HALF], 0),
    "unknown_catalog_name": (["validate", '{"field":"F3","hopf":"kG:Z2x2","action":{"subgroup":["e"]}}'], 2),
    "validate_klein_json": (["validate", "--format", "json", KLEIN_Q], 0),
}


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", CASES)
def test_golden_output(name, capsys):
    argv, expected_code = CASES[name]
    code, out = run(argv, capsys)
    assert code == expected_code
    golden = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert out.replace(str(DATA), "<data>") == golden


def test_cohomology_orders_reported(capsys):
    _, out = run(CASES["cohomology_kz2_f3"][0], capsys)
    assert "orders: |C^1|=4 |Z^1|=2 |B^1|=1 |H^1|=2" in out


def test_klein_summary_line(capsys):
    _, out = run(CASES["klein4_quarter"][0], capsys)
    assert "summary: invertible pair: yes; 2-cocycle: yes" in out
    _, out = run(CASES["klein4_zero"][0], capsys)
    assert "FAIL  omega * omega_bar = e_2" in out


def test_corrupted_cocycle_gives_a_triple(capsys):
    _, out = run(CASES["crossed_product_corrupted"][0], capsys)
    line = next(l for l in out.splitlines() if "witness" in l)
    witness = json.loads(line.split("witness: ", 1)[1])
    assert len(witness["basis"]) == 3


def test_json_output_parses(capsys):
    code, out = run(CASES["validate_klein_json"][0], capsys)
    data = json.loads(out)
    assert data["exit_code"] == code == 0 and data["result"] == "pass"


def test_identical_invocations_identical_bytes(capsys):
    argv = ["property-suite", "--trials", "2", "--seed", "4", KZ4_HALF]
    a = run(argv, capsys)
    b = run(argv, capsys)
    assert a == b and a[0] == 0


def test_timing_flag(capsys):
    _, out = run(["validate", "--timing", KZ4_HALF], capsys)
    assert "timing" in out


def test_argument_errors_exit_two(capsys):
    assert main(["cohomology", KZ2_GLOBAL_F3]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_enumeration_over_q_is_an_input_error(capsys):
    code, out = run(["cohomology", "--n", "1", KZ4_HALF], capsys)
    assert code == 2 and "NotFiniteField" in out


def test_budget_exceeded_is_an_input_error(capsys):
    code, out = run(["cohomology", "--n", "2", "--budget", "10", KZ2_GLOBAL_F3], capsys)
    assert code == 2 and "BudgetExceeded" in out


def test_field_override(capsys):
    code, out = run(["cohomology", "--n", "1", "--field", "F5", KZ2_GLOBAL_F3], capsys)
    # F5: sixteen nowhere-zero functionals, characters still +-1
    assert code == 0 and "|C^1|=16 |Z^1|=2" in out


def test_algebroid_and_cleft_commands(capsys):
    assert run(["verify-algebroid", KLEIN_Q], capsys)[0] == 0
    assert run(["verify-cleft", KLEIN_Q], capsys)[0] == 0
    twisted = KLEIN_Q.replace("klein4(1/4, 1/4)", "klein4(0, 1/6)")
    code, out = run(["verify-algebroid", twisted], capsys)
    assert code == 1 and "FAIL  Delta_l multiplicative" in out
