from __future__ import annotations

import json
import shutil

from periodcoh.cli import default_golden_dir, run
from periodcoh.report import Report


def machine(*argv):
    code, out, err = run([*argv, "--format", "machine"])
    assert code == 0, err
    return json.loads(out)


def test_drinfeld_two_human_table():
    code, out, _ = run(["cohomology", "--preset", "drinfeld:2", "--p", "3", "--n", "1"])
    text = out.decode()
    assert code == 0
    assert "v_{} (St)" in text and "v_{a1}" in text
    assert "ProvenByTheorem (p = 3)" in text


def test_drinfeld_one_machine_output():
    obj = machine("cohomology", "--preset", "drinfeld:1")
    assert [s["degree"] for s in obj["results"]["summands"]] == [1, 2]


def test_basic_gl2_degrees():
    obj = machine("cohomology", "--preset", "gln_basic:2,1:0,1/2")
    summands = obj["results"]["summands"]
    assert {s["degree"] for s in summands} == {0, 2}
    assert all(s["rep"]["kind"] == "i" for s in summands)


def test_empty_boundary_flag():
    obj = machine("boundary", "--preset", "gln_basic:2:1,0:1/2")
    assert obj["results"]["summands"] == []
    assert obj["results"]["boundary_empty"] is True


def test_kottwitz_gl3():
    obj = machine("kottwitz", "--gln", "3", "--mu", "1,0,0")
    assert len(obj["results"]["points"]) == 3
    assert len(obj["results"]["hasse"]) == 2


def test_ext_and_tits():
    obj = machine("ext", "--rank", "2", "--I", "a1", "--J", "a2", "--p", "3",
                  "--group-preset", "GeneralQuasiSplit")
    assert obj["results"]["ext"]["answer"] == "OutsideTheorem(torsion_bound=3)"
    obj = machine("ext", "--rank", "2", "--I", "", "--J", "a1,a2", "--p", "5",
                  "--tits", "G_{2,2}^0")
    assert obj["results"]["tits"]["center_Gsc"] == "1"


def test_round_trip():
    code, out, _ = run(["cohomology", "--preset", "quadric:7", "--format", "machine"])
    assert code == 0
    assert Report.from_json(out.decode()).to_json().encode("ascii") == out


def test_byte_stability():
    argv = ["boundary", "--preset", "drinfeld:3", "--format", "machine"]
    assert run(argv)[1] == run(argv)[1]


def test_usage_error_exit_one():
    assert run(["cohomology", "--bogus"])[0] == 1
    assert run(["nosuchcommand"])[0] == 1


def test_validation_error_exit_two():
    code, out, err = run(["cohomology", "--preset", "gln_basic:2:1,0:1"])
    assert code == 2 and out == b"" and "EmptyPeriodDomain" in err
    assert run(["cohomology", "--group", "Q3", "--mu", "1", "--nu", "0"])[0] == 2
    assert run(["cohomology", "--group", "GL2", "--mu", "1,0"])[0] == 1


def test_consistency_failure_exit_three(tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(default_golden_dir(), golden)
    victim = sorted(golden.glob("*.json"))[0]
    victim.write_text(victim.read_text().replace('"degree": ', '"degree": 1', 1))
    code, out, _ = run(["selftest", "--golden", str(golden), "--skip-criteria", "--format", "machine"])
    assert code == 3
    assert any(g["status"] != "match" for g in json.loads(out)["results"]["golden"])


def test_check_command_passes():
    code, out, _ = run(["check", "--preset", "drinfeld:2", "--format", "machine"])
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["results"]["checks"])
