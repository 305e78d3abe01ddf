import json
import subprocess
import sys
from pathlib import Path

import pytest

from toyqm import projective
from toyqm.cli import main
from toyqm.projective import Bra

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def row(text, bra):
    table = text.split("Pairing")[1].split("Observables")[0]
    line = next(l for l in table.splitlines() if l.strip().startswith(f"⟨{bra}|"))
    return line.split()[1:]


def test_tables_text(capsys):
    code, out, _ = run(capsys, "tables", "--format", "text")
    assert code == 0
    assert row(out, "c") == ["-2", "-2", "1", "0", "-1", "2"]
    assert row(out, "a") == ["1", "0", "1", "1", "1", "1"]
    assert out == (GOLDEN / "tables.txt").read_text(encoding="utf-8")


def test_tables_json(capsys):
    code, out, _ = run(capsys, "tables", "--format", "json")
    data = json.loads(out)
    assert data["schema"] == "toyqm-report/1"
    assert data["pairing"]["c"]["d"] == 0
    assert data["observables"] == {"X": ["c", "d"], "Y": ["e", "f"], "Z": ["a", "b"]}


def test_global_format_flag(capsys):
    code, out, _ = run(capsys, "--format", "json", "tables")
    assert json.loads(out)["pairing"]["a"]["a"] == 1


def test_enumerate_p1(capsys):
    code, out, _ = run(capsys, "enumerate", "p1")
    lines = out.strip().splitlines()
    assert lines[-1] == "6 total"
    assert len(lines[:-1]) == 6


def test_enumerate_p3(capsys):
    code, out, _ = run(capsys, "enumerate", "p3")
    lines = out.strip().splitlines()
    assert lines[-1] == "156 total, 36 product, 120 entangled"
    assert len(lines) == 157


def test_enumerate_spekkens(capsys):
    _, out, _ = run(capsys, "enumerate", "spekkens2")
    assert out.strip().splitlines()[-1] == "36 product, 24 entangled"
    _, out, _ = run(capsys, "--format", "json", "enumerate", "spekkens1")
    assert [s["state"] for s in json.loads(out)["states"]] == ["1v2", "3v4", "1v3", "2v4", "2v3", "1v4"]


def test_enumerate_unknown_space(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "p2"])
    assert exc.value.code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "PASS eq16-identities 8/8" in out
    assert "PASS single-system-agreement 18/18" in out
    assert "PASS classification" in out
    assert out.strip().endswith("all suites passed")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json", "--suite", "classification")
    data = json.loads(out)
    assert data["ok"] and data["suites"][0]["suite"] == "classification"


def test_verify_detects_corrupted_table(capsys, monkeypatch):
    table = [list(r) for r in projective.PAIRING_TABLE]
    table[2][3] = 1
    monkeypatch.setattr(projective, "PAIRING_TABLE", tuple(map(tuple, table)))
    code, out, _ = run(capsys, "verify", "--suite", "pairing-table")
    assert code == 1
    assert "FAIL pairing-table 35/36" in out


def test_verify_detects_corrupted_bra(capsys, monkeypatch):
    monkeypatch.setitem(projective.BRAS, "e", Bra((-2, 1)))
    code, out, _ = run(capsys, "verify", "--suite", "dual-derivation", "--suite", "pairing-table")
    assert code == 1


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify")
    assert code == 0
    assert "perm:1234 matched=false" in out
    assert "12 matched, 12 unmatched" in out
    block = out.split("perm:2134")[1].split("\n\n")[0]
    assert "[1,0,0,2]" in block
    assert ". # . ." in block.splitlines()[1]


def test_classify_json(capsys):
    _, out, _ = run(capsys, "classify", "--format", "json")
    data = json.loads(out)
    recs = {r["perm"]: r for r in data["records"]}
    assert data["summary"]["matched"] == 12
    assert [1, 0, 0, 2] in recs["perm:2134"]["analogs"]
    assert recs["perm:1234"]["matched"] is False
    assert recs["perm:2134"]["profile"]["sys1.X.+1"]["post_name"] == "c*e"


def test_simulate_disturbance(capsys):
    code, out, _ = run(capsys, "--format", "json", "simulate", "--state", "1v2", "--observables", "X,Z", "--trials", "100000", "--seed", "7")
    step2 = json.loads(out)["steps"][1]
    assert abs(step2["frequencies"]["+1"] - 0.5) <= 0.01
    assert abs(step2["frequencies"]["-1"] - 0.5) <= 0.01
    assert step2["exact"] == {"+1": "1/2", "-1": "1/2"}


def test_simulate_eigenstate(capsys):
    _, out, _ = run(capsys, "simulate", "--state", "1v2", "--observables", "Z", "--trials", "100", "--seed", "1")
    assert "step 1 Z: +1 1.00000 -1 0.00000" in out


def test_simulate_deterministic(capsys):
    args = ("simulate", "--state", "2v3", "--observables", "X,X,Y", "--trials", "3000", "--seed", "42")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert "same-as-previous 1.00000" in a


@pytest.mark.parametrize(
    "argv",
    [
        ("simulate", "--state", "1x2", "--observables", "X"),
        ("simulate", "--state", "1v2", "--observables", "W"),
        ("simulate", "--state", "1v2", "--observables", "X", "--trials", "0"),
        ("superpose", "1v2", "7", "1v3"),
        ("superpose", "a", "1", "1v3"),
        ("superpose", "1v2"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_superpose(capsys):
    _, out, _ = run(capsys, "superpose", "1v2", "1", "1v3")
    assert out.strip() == "1v4 (|a⟩+|c⟩ = 2|f⟩ ≐ |f⟩)"
    _, out, _ = run(capsys, "superpose", "1v2", "3", "3v4")
    assert out.strip() == "2v3 (|a⟩+2|b⟩ = |e⟩)"
    _, out, _ = run(capsys, "superpose", "1v2", "2", "1v3")
    assert out.strip() == "3v4 (|a⟩-|c⟩ = -|b⟩ ≐ |b⟩)"


def test_superpose_zero(capsys):
    code, _, err = run(capsys, "superpose", "1v2", "2", "1v2")
    assert code == 1 and "zero superposition" in err


def test_compare_sums_golden(capsys):
    _, out, _ = run(capsys, "--format", "json", "superpose", "--compare-sums")
    assert json.loads(out) == json.loads((GOLDEN / "compare_sums.json").read_text())
    _, text, _ = run(capsys, "superpose", "--compare-sums")
    assert text.strip().endswith("4 of 24 disagree")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "classify", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["summary"]["unmatched"] == 12


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "toyqm", "enumerate", "p1"],
        capture_output=True, text=True, encoding="utf-8", check=True,
    )
    assert res.stdout.strip().splitlines()[-1] == "6 total"
