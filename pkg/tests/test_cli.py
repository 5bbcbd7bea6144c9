import io
import json
import subprocess
import sys

import pytest

from eqtop.cli import main
from eqtop.dsl import format_interpretation, format_theory
from eqtop.interp import (broken_symmetric_difference_interpretation,
                          symmetric_difference_interpretation)
from eqtop.pl.catalog import catalog
from eqtop.pl.expr import witness_to_json
from eqtop.tree import y_tree
from eqtop import theories

MAJORITY = "theory M { op m:3; eq m(x,x,y)=x; eq m(x,y,x)=x; eq m(y,x,x)=x; }\n"


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_demand_majority(files, capsys):
    code, out, _ = run(["demand", files("majority.eqt", MAJORITY)], capsys)
    assert code == 3 and "Demanding" in out


def test_demand_undemanding_and_k(files, capsys):
    code, out, _ = run(["demand", "builtin:associative"], capsys)
    assert code == 0 and "f -> proj1" in out
    code, out, _ = run(["--json", "demand", "builtin:evans", "--k", "2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["witnesses"] == [{"star": ["pick(1,2)", "pick(2,1)"]}]


def test_gen_lambda_pipe():
    gen = subprocess.run([sys.executable, "-m", "eqtop", "gen", "lambda", "2"],
                         capture_output=True, text=True, check=True)
    demand = subprocess.run([sys.executable, "-m", "eqtop", "demand", "-"], input=gen.stdout,
                            capture_output=True, text=True)
    assert demand.returncode == 3
    assert "Demanding" in demand.stdout


def test_gen_outputs_parse(capsys, monkeypatch):
    for what in (["squaring"], ["sqrt2-hspace"], ["lambda", "3"]):
        code, out, _ = run(["gen", *what], capsys)
        assert code == 0
        code, _, _ = run(["parse", "-"], capsys, stdin=out, monkeypatch=monkeypatch)
        assert code == 0


def test_gen_power_and_model_check(files, capsys):
    code, out, _ = run(["gen", "power", "2", "--base-size", "3"], capsys)
    assert code == 0 and json.loads(out)["size"] == 9
    alg = files("power.json", out)
    sq = files("sq.eqt", format_theory(theories.squaring_theory()))
    assert run(["model-check", sq, alg], capsys)[0] == 0
    code, out, _ = run(["model-check", "builtin:majority", alg], capsys)
    assert code == 2   # signature mismatch is an input error


def test_model_check_fails(files, capsys):
    alg = files("pi1.json", json.dumps(
        {"size": 2, "ops": {"m": {"arity": 3, "table": [0, 0, 0, 0, 1, 1, 1, 1]}}}))
    code, out, _ = run(["model-check", "builtin:majority", alg], capsys)
    assert code == 1 and "fails" in out


def test_search_all(capsys):
    code, out, _ = run(["--json", "search", "builtin:majority", "--size", "2", "--all"], capsys)
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "found"
    assert all(m["size"] == 2 for m in data["witnesses"])


def test_search_none(files, capsys):
    sq = files("sq.eqt", format_theory(theories.squaring_theory()))
    assert run(["search", sq, "--size", "3"], capsys)[0] == 1
    assert run(["search", sq, "--size", "4"], capsys)[0] == 0


def test_interp_check(files, capsys):
    good = files("good.eqt", format_interpretation(symmetric_difference_interpretation()))
    bad = files("bad.eqt", format_interpretation(broken_symmetric_difference_interpretation()))
    code, out, _ = run(["interp", "check", good, "--max-size", "4"], capsys)
    assert code == 0 and "confirmed" in out
    code, out, _ = run(["interp", "check", bad, "--max-size", "2"], capsys)
    assert code == 1 and "plus(x, zero) = x" in out


def test_check_pl(files, capsys):
    e = catalog("majority_m")
    th = files("maj.eqt", format_theory(e.theory))
    wit = files("maj.json", json.dumps(witness_to_json(e.witness, e.box)))
    code, out, _ = run(["check-pl", th, wit], capsys)
    assert code == 0 and "equal" in out
    bad = files("bad.json", json.dumps(witness_to_json(e.mutants[0].witness, e.box)))
    code, out, _ = run(["--json", "check-pl", th, bad], capsys)
    data = json.loads(out)
    assert code == 1 and data["verdict"] == "not_equal"
    assert all("/" in c or c.lstrip("-").isdigit() for w in data["witnesses"] for c in w["point"])


def test_check_pl_sample_seeded(files, capsys):
    e = catalog("interval_ring")
    th = files("ir.eqt", format_theory(e.theory))
    bad = files("bad.json", json.dumps(witness_to_json(e.mutants[1].witness, e.box)))
    first = run(["check-pl", th, bad, "--seed", "3"], capsys)
    second = run(["check-pl", th, bad, "--seed", "3"], capsys)
    assert first == second
    assert first[0] == 1 and "seed: 3" in first[1]
    assert run(["check-pl", th, bad, "--certify"], capsys)[0] == 2


def test_tree_check(files, capsys):
    y = files("y.json", json.dumps(y_tree().to_json()))
    code, out, _ = run(["tree-check", y, "median", "builtin:majority",
                        "--grid-denominator", "3"], capsys)
    assert code == 0 and "holds" in out
    code, _, _ = run(["tree-check", y, "median", "builtin:minority",
                      "--grid-denominator", "2"], capsys)
    assert code == 1


def test_catalog_commands(capsys):
    code, out, _ = run(["catalog", "list"], capsys)
    assert code == 0 and "interval_ring" in out.split()
    code, out, _ = run(["catalog", "theory", "lambda_n", "2"], capsys)
    assert code == 0 and out.startswith("theory lambda_2")
    assert run(["catalog", "witness", "nope"], capsys)[0] == 2


def test_catalog_run_all(capsys):
    code, out, _ = run(["--jobs", "2", "catalog", "run-all"], capsys)
    assert code == 0 and "FAILED" not in out and "NOT REFUTED" not in out
    code2, out2, _ = run(["catalog", "run-all"], capsys)
    assert (code2, out2) == (code, out)


def test_input_errors(files, capsys):
    assert run(["demand", "/nonexistent/file"], capsys)[0] == 2
    assert run(["demand", files("b.eqt", "theory B { op f:1; eq f(x,y)=x; }")], capsys)[0] == 2
    assert run(["no-such-command"], capsys)[0] == 2
    assert run(["model-check", "builtin:majority", files("x.json", "{")], capsys)[0] == 2


def test_json_report_has_timing_only_on_request(capsys):
    _, out, _ = run(["--json", "demand", "builtin:majority"], capsys)
    assert "elapsed_ms" not in json.loads(out)
    _, out, _ = run(["--json", "--timing", "demand", "builtin:majority"], capsys)
    assert "elapsed_ms" in json.loads(out)
