import json
import subprocess
import sys
from pathlib import Path

import pytest

from planebrauer.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    (["invariants", "2", "3"], "invariants_2_3.tsv"),
    (["invariants", "2", "3", "1"], "invariants_2_3_1.tsv"),
    (["moduli-dim", "6", "2,2,2"], "moduli_dim_6_222.tsv"),
    (["verify-appendix", "12"], "verify_appendix_12.tsv"),
    (["k3-catalog"], "k3_catalog.tsv"),
    (["residues", "{g}/symbol.json"], "residues_symbol.tsv"),
    (["clifford", "{g}/matrix.json"], "clifford_matrix.tsv"),
    (["resolution-check", "{g}/fixture_222.json"], "resolution_check_222.tsv"),
    (["weil-divisor", "{g}/fixture_222.json"], "weil_divisor_222.tsv"),
    (["compat", "{g}/fixture_222.json"], "compat_222.tsv"),
    (["--format", "json", "compat", "{g}/fixture_42.json", "--residues"], "compat_42.json"),
    (["--format", "json", "moduli-dim", "6", "4,2"], "moduli_dim_6_42.json"),
]


def argv(args):
    return [a.format(g=GOLDEN) for a in args]


@pytest.mark.parametrize("args,golden", CASES, ids=[c[1] for c in CASES])
def test_golden(args, golden):
    code, out, err = run(argv(args))
    assert code == 0, err
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


@pytest.mark.parametrize("args,golden", CASES[5:8], ids=[c[1] for c in CASES[5:8]])
def test_reruns_are_byte_identical(args, golden):
    first = run(argv(args))
    second = run(argv(args))
    assert first == second


def test_example_rows():
    _, out, _ = run(["invariants", "2", "3"])
    assert out.splitlines()[1].split("\t") == ["2", "3", "0", "1", "22", "10"]
    _, out, _ = run(["moduli-dim", "6", "2,2,2"])
    assert out.splitlines()[1].split("\t")[:2] == ["19", "generic"]
    code, out, _ = run(["verify-appendix", "12"])
    assert code == 0 and out.splitlines()[-1] == "0 counterexamples"


def test_global_flags_after_subcommand():
    assert run(["invariants", "2", "3", "--format", "json"]) == run(["--format", "json", "invariants", "2", "3"])
    data = json.loads(run(["invariants", "2", "3", "--format", "json"])[1])
    assert data["h20"] == 1 and data["b2"] == 22


def test_gen_fixture_is_seeded(tmp_path):
    a = run(["gen-fixture", "2,2,2", "--seed", "0"])
    b = run(["--seed", "0", "gen-fixture", "2,2,2"])
    assert a == b and a[0] == 0
    assert a[1] == (GOLDEN / "fixture_222.json").read_text(encoding="utf-8")
    c = run(["gen-fixture", "2,2,2", "--seed", "5"])
    assert c[1] != a[1]


def test_negative_control_exits_one():
    code, out, _ = run(["compat", str(GOLDEN / "fixture_222.json"), "--minor-index", "1"])
    assert code == 1 and out.splitlines()[1].startswith("FAIL")


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 2,\n "terms": [}\n')
    code, _, err = run(["residues", str(bad)])
    assert code == 2 and "line 2" in err
    code, _, err = run(["residues", str(tmp_path / "missing.json")])
    assert code == 2 and "cannot read" in err
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps({"m": 2, "terms": [{"a": "x +* y", "b": "z", "coeff": 1}]}))
    code, _, err = run(["residues", str(poly)])
    assert code == 2 and "syntax" in err
    assert run(["--field", "fp:15", "invariants", "2", "3"])[0] == 2
    assert run(["invariants", "4", "3"])[0] == 2
    assert run(["moduli-dim", "6", "3,2,1"])[0] == 2
    assert run(["gen-fixture", "2,1"])[0] == 2
    data = json.loads((GOLDEN / "fixture_222.json").read_text())
    data["twists"] = [2, 2, 1]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(data))
    assert run(["compat", str(broken)])[0] == 2


def test_out_flag(tmp_path):
    target = tmp_path / "k3.tsv"
    code, out, _ = run(["k3-catalog", "--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == (GOLDEN / "k3_catalog.tsv").read_text(encoding="utf-8")


def test_console_entry_point_and_stdin():
    text = (GOLDEN / "symbol.json").read_text()
    proc = subprocess.run([sys.executable, "-m", "planebrauer", "residues"], input=text, capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "residues_symbol.tsv").read_text(encoding="utf-8")
