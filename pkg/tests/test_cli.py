import json

import pytest

from tspread.commands import decomposition, export
from tspread.commands.verification import stream_records
from tspread.errors import InternalInconsistency
from tspread.integrations.macaulay2 import M2Outcome
from tspread.main import EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from tspread.modules.lexseg_model import LexsegmentSpec
from tspread.modules.processor import FAIL, PASS, SKIP, iter_specs, run_sweep, verify_worker
from tspread.schemas import SweepConfig

WORKED = ["-n", "7", "-d", "3", "-t", "2", "-u", "1,4,6", "-v", "2,5,7"]


class TestEnumerate:
    def test_text(self, capsys):
        assert main(["enumerate", "-n", "6", "-d", "2", "-t", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "|M_{6,2,2}| = 10"
        assert lines[1] == "x1*x3"
        assert lines[-1] == "x4*x6"

    def test_json(self, capsys):
        assert main(["enumerate", "-n", "5", "-d", "2", "-t", "2", "-f", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == [[1, 3], [1, 4], [1, 5], [2, 4], [2, 5], [3, 5]]


class TestSingleSpec:
    def test_decompose_verify(self, capsys):
        assert main(["decompose", *WORKED, "--verify"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "(x1,x2)" in out
        assert out.rstrip().endswith("MATCH")

    def test_decompose_json(self, capsys):
        assert main(["decompose", *WORKED, "-f", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["primes"] == [[1, 2], [4, 5], [4, 7], [6, 7]]
        assert payload["unmixed"] is True

    def test_classify(self, capsys):
        assert main(["classify", *WORKED]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["branch"] == "thm3.2"
        assert payload["is_cm"] is False

    def test_classify_text(self, capsys):
        assert main(["classify", "-n", "9", "-d", "2", "-t", "2", "-u", "1,9", "-v", "2,4", "-f", "text"]) == EXIT_OK
        assert "Cohen-Macaulay: yes (thm3.3)" in capsys.readouterr().out

    def test_invariants_of_initial_default_u(self, capsys):
        assert main(["invariants", "-n", "7", "-d", "3", "-t", "2", "-v", "2,5,7"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert (payload["pd_SmodI"], payload["depth"], payload["dim"], payload["height"]) == (3, 4, 5, 2)
        assert payload["spec"]["kind"] == "initial"

    def test_betti_verify(self, capsys):
        assert main(["betti", *WORKED, "--verify"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "source: completely-linear-count" in out
        assert "MATCH" in out

    def test_betti_falls_back_to_oracle(self, capsys):
        assert main(["betti", "-n", "6", "-d", "2", "-t", "1", "-u", "1,4", "-v", "2,3", "-f", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["source"] == "oracle"

    def test_spec_file(self, tmp_path, capsys):
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(json.dumps({"n": 7, "d": 3, "t": 2, "u": [1, 4, 6], "v": [2, 5, 7]}))
        assert main(["classify", "--spec-file", str(spec_file)]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["branch"] == "thm3.2"


class TestExitCodes:
    def test_reversed_endpoints(self, capsys):
        assert main(["decompose", "-n", "7", "-d", "3", "-t", "2", "-u", "2,5,7", "-v", "1,4,6"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_missing_degree(self, capsys):
        assert main(["classify", "-n", "7"]) == EXIT_USAGE

    def test_missing_spec_file(self, tmp_path):
        assert main(["classify", "--spec-file", str(tmp_path / "absent.json")]) == EXIT_USAGE

    def test_internal_inconsistency(self, monkeypatch, capsys):
        def broken(spec):
            raise InternalInconsistency("closed form disagrees with itself")

        monkeypatch.setattr(decomposition, "decompose", broken)
        assert main(["decompose", *WORKED]) == EXIT_INTERNAL
        assert "internal inconsistency" in capsys.readouterr().err

    def test_mismatch(self, monkeypatch, capsys):
        from tspread.modules.primary_decomp import decompose

        monkeypatch.setattr(decomposition, "decompose",
                            lambda spec: decompose(LexsegmentSpec.final(7, 3, 2, [1, 4, 6])))
        assert main(["decompose", *WORKED, "--verify"]) == EXIT_MISMATCH
        assert "MISMATCH" in capsys.readouterr().out


class TestSweeps:
    def test_verify_to_file(self, tmp_path, capsys):
        report = tmp_path / "report.jsonl"
        code = main(["verify", "--n-max", "4", "--d-max", "2", "--t-max", "1", "-q", "-o", str(report)])
        assert code == EXIT_OK
        records = [json.loads(line) for line in report.read_text().splitlines()]
        assert len(records) == 48
        assert all("checks" in r for r in records)
        assert "0 mismatches" in capsys.readouterr().err

    def test_oracle_cap(self, capsys):
        assert main(["verify", "--n-max", "25", "-q"]) == EXIT_USAGE
        assert "invalid input" in capsys.readouterr().err

    def test_empty_range(self, capsys):
        assert main(["verify", "--n-min", "5", "--n-max", "4", "-q"]) == EXIT_OK
        assert "0 specs, 0 mismatches" in capsys.readouterr().err

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps({"n_min": 3, "n_max": 3, "d_max": 1, "t_max": 1, "oracle": False}))
        assert main(["verify", "--config", str(config), "-q"]) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 6

    def test_conjecture_scan(self, capsys):
        assert main(["conjecture-scan", "--n-max", "4", "--d-max", "2", "-q"]) == EXIT_OK
        assert "0 potential counterexample(s)" in capsys.readouterr().err

    def test_stream_keeps_only_a_tally(self, tmp_path):
        report = tmp_path / "report.jsonl"
        specs = list(iter_specs([4], [2], [1]))
        records = run_sweep(specs, verify_worker(SweepConfig(oracle=False)))
        tally = stream_records(records, str(report))
        assert (tally.total, tally.failed) == (21, 0)
        assert tally.summary["decomposition"] == {PASS: 21, FAIL: 0, SKIP: 0}
        assert len(report.read_text().splitlines()) == 21


class TestExport:
    def test_writes_script(self, tmp_path, capsys):
        path = tmp_path / "worked.m2"
        assert main(["export-m2", str(path), *WORKED]) == EXIT_OK
        assert f"wrote {path}" in capsys.readouterr().out
        assert "monomialIdeal(" in path.read_text()

    def test_run_without_binary(self, tmp_path, monkeypatch, capsys):
        from tspread.config import settings

        monkeypatch.setattr(settings, "M2_BINARY", str(tmp_path / "no-such-m2"))
        assert main(["export-m2", str(tmp_path / "s.m2"), *WORKED, "--run"]) == EXIT_OK
        assert "not confirmed" in capsys.readouterr().out

    def test_failed_assertion_exits_nonzero(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(export, "run_script", lambda path: M2Outcome.FAILED)
        assert main(["export-m2", str(tmp_path / "s.m2"), *WORKED, "--run"]) == EXIT_MISMATCH
        assert "FAILED" in capsys.readouterr().out

    def test_passing_run(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(export, "run_script", lambda path: M2Outcome.PASSED)
        assert main(["export-m2", str(tmp_path / "s.m2"), *WORKED, "--run"]) == EXIT_OK
        assert "all assertions passed" in capsys.readouterr().out


def test_version(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["--version"])
    assert exit_info.value.code == 0
    assert "tspread" in capsys.readouterr().out
