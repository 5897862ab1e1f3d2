import pytest
from pydantic import ValidationError

from tspread.modules.cm_classifier import CmBranch, classify
from tspread.modules.homological import (
    betti_for_spec,
    betti_splitting_check,
    invariants_for_spec,
    split_by_variable,
)
from tspread.modules.lexseg_model import LexsegmentSpec, SegmentKind, build_segment, normalize
from tspread.modules.oracle import depth_oracle, hochster_betti, krull_dim_oracle, reisner_cm_check
from tspread.modules.primary_decomp import I_OVERRIDE_NOTE
from tspread.modules.processor import (
    FAIL,
    PASS,
    SKIP,
    check_spec,
    conjecture_record,
    format_summary,
    iter_specs,
    run_sweep,
    specs_for,
    summarize,
    verify_worker,
)
from tspread.schemas import SweepConfig, SweepRecord


class TestIterSpecs:
    def test_counts_by_kind(self):
        specs = list(iter_specs([4], [2], [1]))
        assert len(specs) == 21
        kinds = [s.kind for s in specs]
        assert kinds.count(SegmentKind.INITIAL) == 6
        assert kinds.count(SegmentKind.FINAL) == 5
        assert kinds.count(SegmentKind.ARBITRARY) == 10

    def test_kind_filter(self):
        specs = list(iter_specs([4], [2], [1], [SegmentKind.FINAL]))
        assert len(specs) == 5
        assert all(s.kind == SegmentKind.FINAL for s in specs)

    def test_empty_box(self):
        assert list(iter_specs([3], [3], [2])) == []
        assert specs_for(SweepConfig(n_min=5, n_max=4)) == []


class TestSweepConfig:
    def test_defaults(self):
        config = SweepConfig()
        assert (config.n_min, config.n_max, config.t_max) == (1, 7, 2)
        assert set(config.kinds) == set(SegmentKind)

    def test_oracle_cap(self):
        with pytest.raises(ValidationError):
            SweepConfig(n_max=25)

    def test_no_oracle_lifts_the_oracle_cap(self):
        assert SweepConfig(n_max=25, oracle=False).n_max == 25

    @pytest.mark.parametrize("field", ["n_min", "d_min", "t_min", "workers"])
    def test_lower_bounds(self, field):
        with pytest.raises(ValidationError):
            SweepConfig(**{field: 0})


class TestCheckSpec:
    def test_worked_example_passes(self, completely_7_3_2):
        record = check_spec(completely_7_3_2)
        assert not record.failed
        assert record.branch == "thm3.2"
        assert record.is_completely
        assert record.checks["decomposition"] == PASS
        assert record.checks["betti"] == PASS
        assert record.checks["classification"] == PASS
        assert record.checks["splitting"] == PASS
        assert record.checks["invariants"] == SKIP

    def test_initial_runs_invariants(self, initial_7_3_2):
        record = check_spec(initial_7_3_2)
        assert record.checks["invariants"] == PASS
        assert record.checks["splitting"] == SKIP

    def test_without_oracle(self, shared_x1_7_3_2):
        record = check_spec(shared_x1_7_3_2, use_oracle=False)
        assert record.checks == {"completely": PASS, "decomposition": PASS}
        assert record.branch == "shared-variable"

    def test_failed_record(self):
        record = SweepRecord(spec={"n": 4, "d": 2, "t": 1, "u": [1, 2], "v": [3, 4]},
                             kind=SegmentKind.INITIAL, checks={"betti": FAIL})
        assert record.failed

    def test_conjecture_bound(self, completely_7_3_2):
        record = conjecture_record(completely_7_3_2)
        assert record.checks == {"dim_bound": PASS}
        assert record.details == {"dim": 5, "bound": 4}

    def test_condition_overrides_reach_the_record(self):
        record = check_spec(LexsegmentSpec.arbitrary(6, 2, 2, [1, 4], [3, 6]))
        assert not record.failed
        assert [o["p"] for o in record.details[I_OVERRIDE_NOTE]] == [2]


class TestRunner:
    def test_serial_sweep_is_clean(self):
        config = SweepConfig(n_max=5, d_max=3, t_max=2)
        records = list(run_sweep(specs_for(config), verify_worker(config)))
        assert records
        assert [r for r in records if r.failed] == []

    def test_order_is_preserved(self):
        specs = list(iter_specs([4], [2], [1]))
        config = SweepConfig(oracle=False)
        records = list(run_sweep(specs, verify_worker(config)))
        assert [r.spec.to_spec() for r in records] == specs

    def test_summary(self):
        specs = list(iter_specs([4], [2], [1]))
        config = SweepConfig(oracle=False)
        summary = summarize(run_sweep(specs, verify_worker(config)))
        assert summary["decomposition"] == {PASS: 21, FAIL: 0, SKIP: 0}
        assert "decomposition" in format_summary(summary)


@pytest.mark.slow
class TestAcceptanceSweeps:
    def test_full_default_box(self):
        config = SweepConfig()
        failed = [r for r in run_sweep(specs_for(config), verify_worker(config)) if r.failed]
        assert failed == []

    def test_process_pool_matches_serial(self):
        config = SweepConfig(n_max=6)
        specs = specs_for(config)
        serial = list(run_sweep(specs, verify_worker(config)))
        pooled = list(run_sweep(specs, verify_worker(config), workers=2))
        assert [r.model_dump() for r in pooled] == [r.model_dump() for r in serial]

    def test_dimension_bound_everywhere(self):
        specs = list(iter_specs(range(2, 9), range(2, 4), range(1, 3)))
        assert all(conjecture_record(s).checks["dim_bound"] == PASS for s in specs)

    def test_betti_formulas_against_hochster(self):
        for spec in iter_specs(range(3, 9), (2, 3), (1, 2)):
            found = betti_for_spec(spec)
            if found is None:
                continue
            table, source = found
            assert table == hochster_betti(build_segment(spec)), f"{spec.describe()} [{source}]"

    def test_invariant_formulas_against_oracle(self):
        for spec in iter_specs(range(3, 10), (2, 3), (1, 2, 3), [SegmentKind.INITIAL, SegmentKind.FINAL]):
            report = invariants_for_spec(spec, allow_oracle=False)
            ideal = build_segment(spec)
            assert report.dim_SmodI == krull_dim_oracle(ideal), spec.describe()
            assert report.depth_SmodI == depth_oracle(ideal), spec.describe()

    def test_classification_against_reisner(self):
        gcd_blocked = principality_blocked = 0
        for spec in iter_specs(range(3, 11), (2, 3, 4), (1, 2, 3)):
            verdict = classify(spec)
            assert verdict.is_cm == reisner_cm_check(build_segment(spec)).is_cm, spec.describe()
            if verdict.branch == CmBranch.THM_3_2 and "gcd" in verdict.witness:
                if verdict.witness["gcd"] != "1":
                    gcd_blocked += 1
                elif not verdict.witness["P_cap_Q_principal"]:
                    principality_blocked += 1
        assert gcd_blocked and principality_blocked

    def test_splitting_identity_on_height_two_regime(self):
        for spec in iter_specs(range(3, 10), (2, 3), (1, 2, 3)):
            if classify(spec).branch != CmBranch.THM_3_2:
                continue
            ideal = build_segment(normalize(spec).residual)
            Q, P = split_by_variable(ideal, 1)
            report = betti_splitting_check(ideal, P, Q)
            assert report.holds and report.pd_identity_holds, spec.describe()
