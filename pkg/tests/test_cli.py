import json
import subprocess
import sys

import pytest

from flagcob.checks import SUITES, run_case, suite_cases, summarize
from flagcob.cli import main
from flagcob.coeff_fgl import ADDITIVE, I2, parse_theories
from flagcob.ddops import bs_class
from flagcob.perm_words import commuting_equivalent
from flagcob.polyring import QPoly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bs_json(capsys):
    code, out, _ = run(capsys, "bs", "--theory", "i2", "--n", "5", "--word", "2,3,4,3")
    assert code == 0
    data = json.loads(out)
    assert data["word"] == [2, 3, 4, 3] and data["theory"] == "i2"
    assert QPoly.from_json(data["class"], I2) == bs_class((2, 3, 4, 3), 5, I2).poly


def test_bs_latex(capsys):
    code, out, _ = run(capsys, "bs", "--theory", "ch", "--n", "3", "--word", "1", "--format", "latex")
    assert code == 0
    assert out.strip() == "x_{1}x_{2}"


def test_bs_usage_errors(capsys):
    assert run(capsys, "bs", "--theory", "i2", "--n", "3")[0] == 2
    assert run(capsys, "bs", "--theory", "i2", "--n", "3", "--word", "1,1")[0] == 2
    assert run(capsys, "bs", "--theory", "i2", "--n", "3", "--word", "5")[0] == 2
    assert run(capsys, "bs", "--theory", "i2", "--n", "3", "--word", "a")[0] == 2
    assert run(capsys, "bs", "--theory", "zz", "--n", "3", "--word", "1")[0] == 2
    assert run(capsys, "bs", "--theory", "ch,i2", "--n", "3", "--word", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_bs_needs_top_class_for_higher_infinitesimal(capsys, tmp_path):
    code, _, err = run(capsys, "bs", "--theory", "i5", "--n", "3", "--word", "1")
    assert code == 2 and "--top-class" in err
    top = {"n": 3, "theory": "i5", "terms": [{"exps": [2, 1], "coeff": {"const": 1, "gamma": 0}}]}
    path = tmp_path / "top.json"
    path.write_text(json.dumps(top))
    code, out, _ = run(capsys, "bs", "--theory", "i5", "--n", "3", "--word", "1", "--top-class", str(path))
    assert code == 0
    inline = run(capsys, "bs", "--theory", "i5", "--n", "3", "--word", "1", "--top-class", json.dumps(top))
    assert inline[1] == out
    assert run(capsys, "bs", "--theory", "i5", "--n", "3", "--word", "1", "--top-class", "{not json")[0] == 2


def test_stable_command(capsys):
    code, out, _ = run(capsys, "stable", "--theory", "ch", "--n", "3", "--word", "1", "--upto", "5")
    assert code == 0
    data = json.loads(out)
    assert data["verified"] and [m["N"] for m in data["members"]] == [3, 4, 5]


def test_dominant_command(capsys):
    code, out, _ = run(capsys, "dominant", "--n", "5", "--partition", "4,2")
    assert code == 0
    data = json.loads(out)
    assert data["segments"] == [[2, 3, 4], [3]]
    assert data["orbits"] == [[[2, 5]], [[3, 4]]]
    assert all(m["agree"] for m in data["members"])
    assert run(capsys, "dominant", "--n", "5", "--partition", "5")[0] == 2
    assert run(capsys, "dominant", "--theory", "ch", "--n", "5", "--partition", "4,2")[0] == 2


def test_decompose_command(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "4", "--word", "2,1,2,3,2")
    assert code == 0
    data = json.loads(out)
    assert data["c"] == [1, 2, 3]
    assert commuting_equivalent(tuple(data["u"] + data["c"] + data["v"]), (2, 1, 2, 3, 2))
    assert data["short_word"] == [x - 1 for x in data["u"]] + data["v"]
    code, out, _ = run(capsys, "decompose", "--n", "3", "--word", "2,1,2", "--mirrored")
    assert code == 0 and json.loads(out)["c"] == [2, 1]
    assert run(capsys, "decompose", "--n", "3", "--word", "2")[0] == 2


@pytest.mark.parametrize("argv", [
    ["check", "restriction", "--max-n", "3", "--theory", "all"],
    ["check", "product", "--n", "4", "--theory", "ch,i2"],
    ["check", "product", "--n", "3", "--theory", "ch,i2", "--mirrored"],
    ["check", "fiber", "--n", "2", "--q", "2", "--max-len", "4"],
    ["check", "operators", "--max-n", "3", "--theory", "all", "--samples", "4"],
    ["check", "normalform", "--max-n", "3", "--samples", "4"],
])
def test_check_suites_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["failed"] == 0 and data["cases"] > 0


def test_check_usage(capsys):
    assert run(capsys, "check", "product")[0] == 2
    assert run(capsys, "check", "fiber", "--n", "2", "--q", "4")[0] == 2
    assert run(capsys, "check", "nosuch")[0] == 2
    assert run(capsys, "check", "restriction", "--jobs", "0")[0] == 2


def test_counterexample_exit_code(capsys, monkeypatch):
    import flagcob.cli as cli

    def broken(results):
        out = summarize(results)
        return {**out, "ok": False, "failed": 1}

    monkeypatch.setattr(cli, "summarize", broken)
    assert run(capsys, "check", "restriction", "--max-n", "2")[0] == 1


def test_parallel_runs_are_deterministic(capsys):
    argv = ["check", "operators", "--max-n", "3", "--theory", "ch,i2", "--samples", "6", "--seed", "3"]
    one = run(capsys, *argv, "--jobs", "1")[1]
    two = run(capsys, *argv, "--jobs", "2")[1]
    assert one == two


def test_jobs_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FLAGCOB_JOBS", "2")
    assert run(capsys, "check", "restriction", "--max-n", "2")[0] == 0
    monkeypatch.setenv("FLAGCOB_JOBS", "many")
    assert run(capsys, "check", "restriction", "--max-n", "2")[0] == 2


def test_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "bs", "--theory", "k", "--n", "3", "--word", "1,2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["theory"] == "k"
    assert run(capsys, "bs", "--n", "3", "--word", "1", "--out", str(tmp_path / "no" / "dir.json"))[0] == 2


def test_suite_cases_are_keyed_and_sorted():
    cases = suite_cases("restriction", theories=parse_theories("ch"), max_n=3)
    results = [run_case(c) for c in reversed(cases)]
    summary = summarize(results)
    assert summary["ok"] and summary["cases"] == len(cases)
    assert set(SUITES) == {"restriction", "product", "fiber", "operators", "normalform"}
    with pytest.raises(ValueError):
        suite_cases("nosuch")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flagcob", "bs", "--theory", "ch", "--n", "2", "--word", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert QPoly.from_json(json.loads(proc.stdout)["class"], ADDITIVE) == QPoly.one(2, ADDITIVE)
