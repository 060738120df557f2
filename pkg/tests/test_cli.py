import io
import json
import subprocess
import sys

import jsonschema
import pytest

from cliffbreak.cli import main, run_repl
from cliffbreak.report import build_report, claim_results, from_json, to_json, to_text, validate_report
from cliffbreak.claims import run_claims


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_classify():
    assert run("classify", "3", "3") == (0, "Cl(3,3) ≅ M(8,R)\n")
    code, text = run("classify", "1", "3", "--ring", "h", "--empirical")
    assert code == 0 and "M(8,R)" in text and "agrees" in text
    code, text = run("classify", "0", "3", "--format", "json")
    assert json.loads(text)["table"] == "M(1,H) ⊕ M(1,H)"


def test_eval():
    assert run("eval", "i*g5", "--algebra", "dirac-c") == (0, "-g0*g1*g2*g3\n")
    assert run("eval", "(1+e1*e2*e3)/2", "--algebra", "cl(0,3)")[1] == "1/2 + e1*e2*e3/2\n"


def test_eval_errors_are_usage_errors(capsys):
    assert run("eval", "k", "--algebra", "dirac-c")[0] == 2
    assert "RING_MISMATCH" in capsys.readouterr().err
    assert run("eval", "1+")[0] == 2
    assert "SYNTAX" in capsys.readouterr().err
    assert run("eval", "g1", "--algebra", "nowhere")[0] == 2


def test_bad_arguments_exit_2():
    assert run("classify", "x", "3")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("claims", "run", "--jobs", "0")[0] == 2


def test_gens_verify():
    code, text = run("gens", "verify", "--algebra", "dirac-h", "i*g1", "i*g2", "i*g3", "i*g0", "j", "k")
    assert code == 0
    assert "signature (3,3)" in text and "64 of 64 (full)" in text
    code, text = run("gens", "verify", "--algebra", "dirac-h", "--format", "json",
                     "g1", "g2", "g3", "g5", "j*g5", "k*g5")
    doc = json.loads(text)
    validate_report(doc)
    assert doc["entries"][0]["details"]["pseudoscalar_factor"]["g0"] == "-1"
    code, _ = run("gens", "verify", "--algebra", "dirac-h", "g0", "g0")
    assert code == 1


def test_centralizer_and_split():
    code, text = run("centralizer", "--algebra", "dirac-h", "--within", "g0", "g1", "g2", "g3", "j", "k", "--",
                     "g0*g1", "g0*g2", "g0*g3", "g1*g2", "g1*g3", "g2*g3")
    assert code == 0 and text.startswith("centralizer rank 8")
    code, text = run("centralizer", "--algebra", "dirac-h", "--format", "json",
                     "g0*g1", "g0*g2", "g0*g3", "g1*g2", "g1*g3", "g2*g3")
    doc = json.loads(text)
    assert doc["rank"] == 8 and doc["class"] == "M(2,C)"
    code, text = run("split", "e1*e2*e3", "--algebra", "cl(0,3)", "--format", "json")
    doc = json.loads(text)
    assert doc["plus"] == {"rank": 4, "class": "M(1,H)"} == doc["minus"]
    assert run("split", "e1*e2", "--algebra", "cl(3,0)")[0] == 2


def test_lie_verdict():
    code, text = run("lie", "verdict", "--algebra", "cl(5,1)", "e1", "e2", "e3", "e4", "e5", "e6")
    assert code == 0 and text.startswith("sl(2,H)")
    code, text = run("lie", "verdict", "--algebra", "cl(0,3)", "--closure", "--format", "json",
                     "e1 + e2*e3", "e2 + e3*e1", "e3 + e1*e2")
    assert json.loads(text)["real_form"] == "su(2)"


def test_claims_run_text_and_exit(capsys):
    code, text = run("claims", "run", "--filter", "C0")
    assert code == 0
    assert "DISCREPANCY C07-literal" in text
    assert "warning: 2 DISCREPANCY" in capsys.readouterr().err


def test_claims_list():
    code, text = run("claims", "list", "--filter", "C14")
    assert code == 0 and len(text.splitlines()) == 5


def test_claims_output_and_figures(tmp_path):
    out = tmp_path / "report.json"
    code, text = run("claims", "run", "--filter", "C1", "--format", "json", "--output", str(out),
                     "--figures", str(tmp_path / "figs"))
    assert code == 0 and text == ""
    from_json(out.read_text(encoding="utf-8"))
    assert (tmp_path / "figs" / "classification.png").stat().st_size > 0
    assert (tmp_path / "figs" / "killing.png").stat().st_size > 0


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CLIFFBREAK_SEED", "5")
    doc = json.loads(run("claims", "run", "--filter", "C17-spin-boost", "--format", "json")[1])
    assert doc["seed"] == 5
    doc = json.loads(run("claims", "run", "--filter", "C17-spin-boost", "--format", "json", "--seed", "9")[1])
    assert doc["seed"] == 9
    monkeypatch.setenv("CLIFFBREAK_SEED", "abc")
    assert run("claims", "run", "--filter", "C17")[0] == 2


def test_report_round_trip():
    results = run_claims("C0")
    doc = build_report(results, seed=1)
    text = to_json(doc)
    back = from_json(text)
    assert back == doc
    assert [r.to_dict() for r in claim_results(back)] == [r.to_dict() for r in results]
    assert to_json(back) == text
    assert "PASS" in to_text(doc)


def test_report_schema_rejects_bad_documents():
    doc = build_report(run_claims("C10"))
    bad = json.loads(to_json(doc))
    bad["entries"][0]["status"] = "MAYBE"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(bad)
    bad = json.loads(to_json(doc))
    bad["schema_version"] = "2"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(bad)


def test_repl_session():
    script = io.StringIO("let p = (1+g5)/2\np*p - p\nlet g1 = 3\nzz\n:env\n:algebra cl(0,2)\ne1*e2*e1*e2\n"
                         "let p = e1\np\n:quit\nnot reached\n")
    out = io.StringIO()
    assert run_repl("dirac-h", script, out) == 0
    lines = out.getvalue().splitlines()
    assert lines[0] == "p = 1/2 + i*g0*g1*g2*g3/2"
    assert lines[1] == "0"
    assert lines[2].startswith("error: cannot bind")
    assert lines[3].startswith("error: UNDEFINED_SYMBOL")
    assert lines[4] == "p = 1/2 + i*g0*g1*g2*g3/2"
    assert lines[5:] == ["algebra cl(0,2)", "-1", "p = e1", "e1"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cliffbreak", "classify", "2", "0"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0 and proc.stdout == "Cl(2,0) ≅ M(2,R)\n"
