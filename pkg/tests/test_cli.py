import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from explosion.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, check_line, main, parse_check_line
from explosion.serialize import validate

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,golden", [
    (["check", "--logic", "builtin:pwk", "--principle", "ecq:neg"], "check_pwk_ecq.txt"),
    (["check", "--logic", "builtin:p1", "--principle", "gecq,secq,specq,pfecq"], "check_p1.txt"),
    (["check", "--logic", "builtin:pure-reflexive:3", "--principle", "nf_para,gecq"], "check_pure_reflexive.txt"),
    (["companion", "--base", "builtin:cpc", "--mode", "pure_right", "--premises", "p,¬p", "--conclusion", "q"],
     "companion_pure_right.txt"),
    (["mine", "--require", "secq=proven,gecq=refuted", "--max-carrier", "4"], "mine_secq_not_gecq.txt"),
])
def test_golden_text(argv, golden):
    code, out = run(*argv)
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text("utf-8")


@pytest.mark.parametrize("logic,principles", [
    ("builtin:pwk", "ecq:neg,gecq"),
    ("builtin:p1", "gecq,secq,specq,pfecq"),
    ("builtin:pure-reflexive:3", "nf_para,gecq,k_para:{a,b}"),
    ("builtin:ex-3-5", "secq,specq"),
])
def test_text_and_json_carry_the_same_verdicts(logic, principles):
    _, text = run("check", "--logic", logic, "--principle", principles)
    _, js = run("check", "--logic", logic, "--principle", principles, "--format", "json")
    rep = json.loads(js)
    validate(rep, "report")
    lines = text.splitlines()
    assert lines[0].endswith("input=" + rep["input_digest"])
    parsed = [parse_check_line(x) for x in lines[1:]]
    stripped = [{k: v for k, v in c.items() if k != "timing"} for c in rep["checks"]]
    assert parsed == stripped
    assert [check_line(c) for c in stripped] == lines[1:]


def test_expected_verdicts_in_json():
    _, js = run("check", "--logic", "builtin:pure-reflexive:3", "--principle", "nf_para", "--format", "json")
    [c] = json.loads(js)["checks"]
    assert c["verdict"] == "proven" and c["scope"] == {"kind": "exact"}
    _, js = run("check", "--logic", "builtin:pwk", "--principle", "ecq:neg", "--format", "json")
    [c] = json.loads(js)["checks"]
    assert c["verdict"] == "refuted" and c["witness"] == {"gamma": ["p", "¬p"], "not_entailed": "q"}


def test_from_report_reproduces_verdicts(tmp_path):
    _, js = run("check", "--logic", "builtin:p1", "--principle", "gecq,pfecq", "--format", "json")
    path = tmp_path / "r.json"
    path.write_text(js, "utf-8")
    code, again = run("check", "--from-report", str(path), "--format", "json")
    assert code == EXIT_OK
    a, b = json.loads(js), json.loads(again)
    assert a["input_digest"] == b["input_digest"]
    strip = lambda r: [{k: v for k, v in c.items() if k != "timing"} for c in r["checks"]]  # noqa: E731
    assert strip(a) == strip(b)


def test_logic_file_input(tmp_path):
    doc = {"kind": "finite", "carrier": ["a", "b"],
           "table": [[[], []], [[0], [0, 1]], [[1], [1]], [[0, 1], [0]]]}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc), "utf-8")
    code, out = run("check", "--logic", str(path), "--principle", "parecq,gecq")
    assert code == EXIT_OK
    verdicts = [parse_check_line(x)["verdict"] for x in out.splitlines()[1:]]
    assert verdicts == ["proven", "refuted"]


def test_qn_and_entail():
    code, out = run("qn", "--logic", "builtin:cpc", "--formula", "p", "--pool-depth", "2")
    assert code == EXIT_OK and "¬p" in out.splitlines()[1:]
    _, out = run("entail", "--logic", "builtin:pwk", "--premises", "p,¬p", "--conclusion", "q")
    assert out.strip() == "false"
    _, out = run("entail", "--logic", "builtin:cpc", "--premises", "p,¬p", "--conclusion", "q")
    assert out.strip() == "true"


def test_exit_codes(tmp_path, capsys):
    assert run("check", "--logic", str(tmp_path / "nope.json"), "--principle", "gecq")[0] == EXIT_INPUT
    assert run("check", "--logic", "builtin:cpc", "--principle", "nonsense")[0] == EXIT_INPUT
    assert run("entail", "--logic", "builtin:cpc", "--conclusion", "p ∧")[0] == EXIT_INPUT
    assert run("check", "--logic", "builtin:cpc")[0] == EXIT_INPUT
    code, out = run("check", "--logic", "builtin:cpc", "--principle", "specq", "--pool-vars", "5")
    assert code == EXIT_BUDGET and "budget exceeded" in out
    with pytest.raises(SystemExit) as e:
        main(["check", "--bogus"])
    assert e.value.code == EXIT_INPUT


def test_gallery_list_and_battery():
    code, out = run("gallery-list")
    assert code == EXIT_OK and "cpc\tmatrix" in out and "ex-3-13\trule" in out
    code, js = run("battery", "--n", "2", "--op-sample", "500", "--format", "json")
    rep = json.loads(js)
    assert code == EXIT_OK and rep["ok"] and rep["tables"] == 256


def test_mine_with_query_file(tmp_path):
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"require": {"parecq": "proven", "gecq": "refuted"}, "max_carrier": 3}), "utf-8")
    code, js = run("mine", "--query", str(q), "--format", "json")
    res = json.loads(js)
    assert code == EXIT_OK and res["found"] and res["n"] == 2


@pytest.mark.parametrize("cmd", ["check", "qn", "entail", "companion", "mine", "gallery-list", "battery"])
def test_help(cmd):
    r = subprocess.run([sys.executable, "-m", "explosion", cmd, "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "usage:" in r.stdout


def test_version():
    r = subprocess.run([sys.executable, "-m", "explosion", "--version"], capture_output=True, text=True)
    assert r.stdout.startswith("explosion ")
