import subprocess

from tspread.integrations import macaulay2
from tspread.integrations.macaulay2 import M2Outcome, build_script, run_script, write_script
from tspread.modules.lexseg_model import LexsegmentSpec


def test_script_for_worked_example(completely_7_3_2):
    lines = build_script(completely_7_3_2).splitlines()
    assert lines[1] == "R = QQ[x_1..x_7];"
    assert lines[2].startswith("I = monomialIdeal(x_1*x_4*x_6, ")
    assert ("assert(ideal I == intersect(ideal(x_1,x_2), ideal(x_4,x_5), ideal(x_4,x_7), "
            "ideal(x_6,x_7)));") in lines
    assert "assert(pdim(R^1/ideal I) == 3);" in lines
    assert "assert(dim(R^1/ideal I) == 5);" in lines
    assert "-- Betti table source: completely-linear-count" in lines
    assert ("assert(betti res module ideal I == new BettiTally from "
            "{(0,{3},3) => 6, (1,{4},4) => 7, (2,{5},5) => 2});") in lines


def test_single_prime_has_no_intersect():
    script = build_script(LexsegmentSpec.arbitrary(5, 1, 1, [3], [3]))
    assert "assert(ideal I == ideal(x_3));" in script


def test_oracle_table_when_no_formula():
    script = build_script(LexsegmentSpec.arbitrary(6, 2, 1, [1, 4], [2, 3]))
    assert "-- Betti table source: oracle" in script


def test_write_and_missing_binary(tmp_path, completely_7_3_2):
    path = write_script(completely_7_3_2, tmp_path / "check.m2")
    assert path.read_text(encoding="utf-8").endswith('print "all assertions passed";\n')
    assert run_script(path, binary=str(tmp_path / "missing-m2")) == M2Outcome.UNAVAILABLE


def test_nonzero_exit_is_reported(tmp_path, monkeypatch):
    def failing(cmd, **kwargs):
        return subprocess.CompletedProcess(cmd, 1, stdout="", stderr="assertion failed")

    monkeypatch.setattr(macaulay2.subprocess, "run", failing)
    assert run_script(tmp_path / "x.m2", binary="M2") == M2Outcome.FAILED


def test_success(tmp_path, monkeypatch):
    calls = []

    def passing(cmd, **kwargs):
        calls.append(cmd)
        return subprocess.CompletedProcess(cmd, 0, stdout="all assertions passed\n", stderr="")

    monkeypatch.setattr(macaulay2.subprocess, "run", passing)
    assert run_script(tmp_path / "x.m2", binary="M2") == M2Outcome.PASSED
    assert calls == [["M2", "--script", str(tmp_path / "x.m2")]]


def test_timeout_counts_as_failure(tmp_path, monkeypatch):
    def slow(cmd, **kwargs):
        raise subprocess.TimeoutExpired(cmd, kwargs["timeout"])

    monkeypatch.setattr(macaulay2.subprocess, "run", slow)
    assert run_script(tmp_path / "x.m2", binary="M2") == M2Outcome.FAILED
