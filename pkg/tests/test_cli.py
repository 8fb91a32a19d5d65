import json
import subprocess
import sys

import pytest

from superjm.cli import main

GL12_NEAT = '{"coeffs":{"E12":"1","E31":"1"}}'
CHAIN2 = '{"space":{"even":["a0"],"odd":["a1"]},"matrix":[["0","0"],["1","0"]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phi_example_output(capsys):
    code, out, _ = run(capsys, "phi", "--preset", "gl12", "--element", GL12_NEAT)
    assert code == 0
    assert json.loads(out) == {"summands": [{"k": 1, "shift": "odd", "mult": 1}]}


def test_phi_text_format(capsys):
    code, out, _ = run(capsys, "phi", "--preset", "gl12", "--element", GL12_NEAT, "--format", "text")
    assert code == 0 and out.strip() == "ΠM1"


def test_blocks_and_chains(capsys):
    code, out, _ = run(capsys, "blocks", "--module", CHAIN2, "--chains")
    doc = json.loads(out)
    assert code == 0
    assert doc["blocks"] == [{"length": 2, "top_parity": "even", "mult": 1}]
    assert doc["chains"] == [[["1", "0"], ["0", "1"]]]


def test_blocks_from_algebra_element(capsys):
    code, out, _ = run(capsys, "blocks", "--preset", "gl12", "--element", GL12_NEAT)
    assert code == 0
    assert json.loads(out)["blocks"] == [{"length": 3, "top_parity": "odd", "mult": 1}]


def test_neat(capsys):
    code, out, _ = run(capsys, "neat", "--preset", "gl11", "--element", '{"coeffs":{"E12":"1"}}')
    assert code == 0 and json.loads(out)["neat"] is False
    code, out, _ = run(capsys, "neat", "--module", CHAIN2)
    assert json.loads(out)["neat"] is False


def test_deligne(capsys):
    code, out, _ = run(capsys, "deligne", "--module", CHAIN2)
    assert code == 0 and json.loads(out)["gr_dims"] == {"-1": 1, "1": 1}


def test_jm_triple_success_and_refusal(capsys):
    code, out, _ = run(capsys, "jm-triple", "--preset", "osp12", "--rep", "adjoint", "--element", '{"coeffs":{"X":"1"}}')
    doc = json.loads(out)
    assert code == 0 and doc["h"] == {"coeffs": {"h": "1"}} and doc["certificates"]["relations"]
    code, out, _ = run(capsys, "jm-triple", "--preset", "gl11", "--element", '{"coeffs":{"E12":"1"}}')
    assert code == 1 and json.loads(out) == {"ok": False, "error": "not neat"}


def test_ds(capsys):
    code, out, _ = run(capsys, "ds", "--preset", "gl22", "--element", '{"coeffs":{"E13":"1"}}')
    doc = json.loads(out)
    assert code == 0
    assert doc["module"]["sdim"] == 0
    assert doc["algebra"]["dims"] == [2, 2]


def test_ds_rejects_non_square_zero(capsys):
    code, _, err = run(capsys, "ds", "--preset", "gl11", "--element", '{"coeffs":{"E12":"1","E21":"1"}}')
    assert code == 2 and err.startswith("error: precondition:")


def test_fusion(capsys):
    code, out, _ = run(capsys, "fusion", "--family", "ga11", "--left", "1", "--right", "1")
    assert code == 0
    assert json.loads(out)["summands"] == [
        {"k": 1, "length": 2, "shift": "even", "mult": 1},
        {"k": 1, "length": 2, "shift": "odd", "mult": 1},
    ]
    code, out, _ = run(capsys, "fusion", "--family", "osp", "--left", "1", "--right", "1:odd", "--format", "text")
    assert out.strip() == "ΠM0 ⊕ M1 ⊕ ΠM2"


def test_jc(capsys):
    code, out, _ = run(capsys, "jc", "--module", '[["1","1"],["0","1"]]')
    doc = json.loads(out)
    assert code == 0 and doc["s"] == [["1", "0"], ["0", "1"]] and doc["n"] == [["0", "1"], ["0", "0"]]


def test_scan_presets(capsys):
    code, out, _ = run(capsys, "scan", "--preset", "gl12-neat-cone", "--samples", "50", "--seed", "1")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "scan", "--preset", "gl11-support", "--samples", "4", "--seed", "1")
    assert code == 0 and json.loads(out)["violations"] == []


def test_check_single_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "jc", "--seed", "3", "--samples", "20")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == 0 and doc["results"][0]["cases"] == 20


@pytest.mark.parametrize("argv,code_tag", [
    (["phi", "--preset", "gl12", "--element", "{bad"], "malformed_json"),
    (["phi", "--preset", "nope", "--element", GL12_NEAT], "unknown_preset"),
    (["phi", "--preset", "gl12", "--element", '{"coeffs":{"E77":"1"}}'], "unknown_basis"),
    (["scan", "--preset", "gl12-neat-cone"], "missing_seed"),
    (["check", "--suite", "nope", "--seed", "1"], "unknown_suite"),
    (["fusion", "--left", "x", "--right", "1"], "bad_argument"),
    (["blocks", "--preset", "gl11", "--element", '{"coeffs":{"E11":"1"}}'], "not_odd"),
    (["blocks", "--preset", "gl11", "--element", '{"coeffs":{"E12":"1","E21":"1"}}'], "not_nilpotent"),
])
def test_input_errors_exit_two(capsys, argv, code_tag):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith(f"error: {code_tag}: ") and err.count("\n") == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superjm", "fusion", "--left", "0", "--right", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summands"][0]["k"] == 2
