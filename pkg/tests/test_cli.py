import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

import whtorsion.fuzz
from whtorsion.cli import lens_d2_check, main, parse_range

DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def test_torsion_of_identity_from_file(tmp_path):
    code, rep = run("torsion", str(DATA / "c5_double.tlx"), "--map", "id")
    assert code == 0 and rep["verdict"] == "Trivial" and rep["tau"] == "[1]"
    code, rep = run("torsion", str(DATA / "c5_double.tlx"), "--map", "f")
    assert code == 0 and rep["verdict"] == "Nontrivial"
    assert set(rep) >= {"verdict", "witness", "reason", "tau"}


def test_torsion_of_builtin_lens_maps():
    code, rep = run("torsion", "--lens", "7", "1", "2", "3")
    assert code == 0 and rep["verdict"] == "Nontrivial"
    code, rep = run("torsion", "--lens", "5", "1", "1", "1")
    assert code == 0 and rep["verdict"] == "Trivial"


def test_inconclusive_lens_search_exits_3():
    code, rep = run("torsion", "--lens", "7", "1", "3", "1")
    assert code == 3 and rep["verdict"] == "Unknown"


def test_malformed_input_exits_2(capsys):
    code, rep = run("torsion", str(DATA / "bad.tlx"), "--map", "f")
    assert code == 2 and rep["line"] == 4
    assert "line 4" in capsys.readouterr().err
    assert run("torsion", str(DATA / "missing.tlx"), "--map", "f")[0] == 2
    assert run("torsion", str(DATA / "c5_double.tlx"), "--map", "nope")[0] == 2
    assert run("torsion")[0] == 2


def test_bad_arguments_exit_2():
    assert run("verify", "--suite", "bogus")[0] == 2
    assert run("table", "--In", "2", "--tate", "0", "--psi", "0")[0] == 2
    assert run()[0] == 2


def test_verify_summary():
    code, rep = run("verify", "--suite", "doubles", "--trials", "3", "--seed", "1")
    assert code == 0
    assert rep["command"] == "verify" and rep["passed"] == 3 and rep["failed"] == 0


def test_verify_failure_exits_1(monkeypatch):
    def failing(*a, **k):
        return {"suite": "calculus", "passed": 0, "failed": 1, "inconclusive": 0}
    monkeypatch.setattr(whtorsion.fuzz, "run_suite", failing)
    assert run("verify", "--suite", "calculus", "--trials", "1")[0] == 1

    def unsure(*a, **k):
        return {"suite": "calculus", "passed": 0, "failed": 0, "inconclusive": 1}
    monkeypatch.setattr(whtorsion.fuzz, "run_suite", unsure)
    assert run("verify", "--suite", "calculus", "--trials", "1")[0] == 3


def test_double_command():
    code, rep = run("double", str(DATA / "c5_double.tlx"))
    assert code == 0
    by_name = {d["name"]: d for d in rep["doubles"]}
    assert by_name["T"]["tau_polarised"] == "[1]"
    assert by_name["M"]["tau_verdict"] == "Nontrivial"
    assert all(d["split"] and d["self_cheq"] == "Trivial" for d in rep["doubles"])
    code, rep = run("double", str(DATA / "c5_double.tlx"), "--name", "W")
    assert [d["name"] for d in rep["doubles"]] == ["W"]


@pytest.mark.parametrize("flags, expected", [
    (("0", "0", "0"), ["No", "No", "No"]),
    (("1", "1", "1"), ["Yes", "Yes", "Yes"]),
    (("0", "1", "0"), ["Open", "No", "Open"]),
])
def test_table_command(flags, expected):
    code, rep = run("table", "--In", flags[0], "--tate", flags[1], "--psi", flags[2])
    assert code == 0
    assert [rep[c]["answer"] for c in ("Mhs", "Mhcob", "Mhshcob")] == expected


def test_table_row_five_ranges():
    _, rep = run("table", "--In", "1", "--tate", "1", "--psi", "1")
    assert [rep[c]["dimensions"] for c in ("Mhs", "Mhcob", "Mhshcob")] == ["n >= 5", "n = 9, >= 11", "n >= 5"]


def test_invalid_profile_exits_2():
    code, rep = run("table", "--In", "0", "--tate", "0", "--psi", "1")
    assert code == 2 and "Tate" in rep["error"]


def test_table_all():
    code, rep = run("table", "--all")
    assert code == 0 and len(rep["rows"]) == 6


def test_lens_command():
    code, rep = run("lens", "--m", "5", "--q", "1", "--q2", "1", "--a", "1", "--check", "12")
    assert code == 0
    assert rep["complex"]["d"]["2"] == "1 + s + s^2 + s^3 + s^4"
    assert rep["equivalence"]["verdict"] == "Trivial"
    assert rep["d_squared_zero"]["failures"] == []
    assert run("lens")[0] == 2
    assert run("lens", "--m", "6", "--q", "2")[0] == 2


def test_lens_d2_up_to_30():
    assert lens_d2_check(30) == []


def test_parse_range():
    assert parse_range("2..9") == range(2, 10)
    assert parse_range("4") == range(4, 5)


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "whtorsion", "verify", "--suite", "theoremB", "--trials", "4", "--seed", "7",
           "--m", "2..9", "--n", "6..10"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--workers", "2"], capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["passed"] == 4
