import io
import json
import subprocess
import sys

import pytest

from bpoly import cli
from bpoly.bcore import b_poly, t_mixed
from bpoly.identities import CheckReport
from bpoly.named import A1, M1, T_AC
from bpoly.poly import MultiPoly


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_compute_b_json():
    code, text = run("compute", "b", "@T_ac")
    assert code == 0
    assert MultiPoly.from_json(text) == b_poly(T_AC)


def test_compute_b_at_q_values():
    code, text = run("compute", "b", "digraph 2; 1 2", "--q-list", "1,2,3")
    assert code == 0
    values = json.loads(text)
    assert set(values) == {"1", "2", "3"}
    # one colour gives the constant colouring only
    assert MultiPoly.from_json(json.dumps(values["1"])) == 1


def test_compute_t1_on_mixed_input():
    code, text = run("compute", "t1", "@M1")
    assert code == 0
    assert MultiPoly.from_json(text) == t_mixed(M1, 1)


def test_compute_structure():
    code, text = run("compute", "structure", "@T_cyc")
    assert code == 0
    obj = json.loads(text)
    assert obj["is_totally_cyclic"] is True and obj["is_acyclic"] is False


def test_compute_other_targets():
    for argv in (["qsym", "@P3"], ["qsym", "@P3", "--basis", "F"], ["potts", "@T_ac"],
                 ["tutte", "@T_ac"], ["t2", "@M1"], ["chromatic", "@T_ac"], ["chromatic", "@M1"],
                 ["chromatic", "@A1", "--word", "+-"], ["bfamily", "@A1", "--m", "2"],
                 ["bfamily", "@A1", "--word", "+-"], ["dual", "@T_cyc"]):
        code, text = run("compute", *argv)
        assert code == 0, argv
        json.loads(text)


def test_compute_pretty():
    code, text = run("compute", "b", "digraph 2; 1 2", "--pretty")
    assert code == 0 and "q" in text and not text.startswith("{")


def test_check_passes():
    code, text = run("check", "@T_ac", "--checks", "gf-acyclic-reorient")
    assert code == 0
    rows = lines(text)
    assert rows[0]["passed"] is True
    assert rows[-1] == {"summary": {"total": 1, "passed": 1, "failed": 0, "skipped": 0}}


def test_check_all_on_edge():
    code, text = run("check", "@A1")
    rows = lines(text)
    assert code == 0
    s = rows[-1]["summary"]
    assert s["failed"] == 0 and s["total"] == s["passed"] > 0


def test_check_planar_duality_with_named_embedding():
    code, text = run("check", "@T_cyc", "--checks", "planar-duality")
    assert code == 0 and lines(text)[-1]["summary"]["passed"] >= 1


def test_check_failure_exit_code(monkeypatch):
    def fake(cid, H, params=None):
        return CheckReport(cid, "x", False, 1, 2, dict(params or {}))
    monkeypatch.setattr(cli, "run_check", fake)
    code, text = run("check", "@A1", "--checks", "rec-arc")
    assert code == 1 and lines(text)[-1]["summary"]["failed"] == 1
    code, text = run("check", "@A1", "--checks", "rec-arc", "--pretty")
    assert code == 1 and text.startswith("FAIL rec-arc")


def test_parse_errors_exit_two(capsys):
    assert run("compute", "b", "digraph 2; 1 3")[0] == 2
    assert run("check", "@A1", "--checks", "no-such-check")[0] == 2
    assert "unknown check id 'no-such-check'" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        run("compute", "nonsense", "@A1")
    assert exc.value.code == 2


def test_precondition_exit_three():
    assert run("check", "@T_cyc", "--checks", "symmetry-acyclic")[0] == 3
    assert run("compute", "dual", "digraph 3; 1 2; 2 3")[0] == 3


def test_survey_is_byte_stable():
    a = run("survey", "--n", "2", "--m", "2")
    b = run("survey", "--n", "2", "--m", "2", "--jobs", "2")
    assert a[0] == 0 and a == b


def test_list_checks():
    code, text = run("list-checks")
    ids = [row.split("\t")[0] for row in text.splitlines()]
    assert code == 0 and "rec-arc" in ids and ids == sorted(ids)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bpoly.cli", "compute", "b", "@A1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert MultiPoly.from_json(proc.stdout) == b_poly(A1)
