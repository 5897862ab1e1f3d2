"""
Exhaustive sweeps: every lexsegment spec in a parameter box is checked
against the brute-force oracle, one record per spec.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator

from tqdm import tqdm

from tspread.config import settings
from tspread.errors import InternalInconsistency, TSpreadError
from tspread.modules.cm_classifier import CmBranch, classify
from tspread.modules.homological import (
    betti_for_spec,
    betti_monotonicity_check,
    betti_splitting_check,
    invariants_for_spec,
    split_by_variable,
)
from tspread.modules.lexseg_model import (
    LexsegmentSpec,
    SegmentKind,
    build_segment,
    classify_kind,
    is_completely,
    is_completely_by_intersection,
    normalize,
)
from tspread.modules.monomial_core import enumerate_M
from tspread.modules.oracle import (
    depth_oracle,
    hochster_betti,
    krull_dim_oracle,
    minimal_primes_bruteforce,
    reisner_cm_check,
)
from tspread.modules.primary_decomp import I_OVERRIDE_NOTE, PrimeDecomposition, decompose
from tspread.schemas import SpecPayload, SweepConfig, SweepRecord

logger = logging.getLogger(__name__)

PASS, FAIL, SKIP = "pass", "fail", "skip"


def iter_specs(n_range: Iterable[int], d_range: Iterable[int], t_range: Iterable[int],
               kinds: Iterable[SegmentKind] | None = None) -> Iterator[LexsegmentSpec]:
    """All pairs u >=slex v in M_{n,d,t}, kind read off the endpoints."""
    wanted = set(kinds) if kinds else set(SegmentKind)
    d_values, t_values = list(d_range), list(t_range)
    for n in n_range:
        for d in d_values:
            for t in t_values:
                monomials = enumerate_M(n, d, t)
                for a, u in enumerate(monomials):
                    for v in monomials[a:]:
                        if classify_kind(n, d, t, u, v) in wanted:
                            yield LexsegmentSpec.from_endpoints(n, d, t, u, v)


def specs_for(config: SweepConfig) -> list[LexsegmentSpec]:
    return list(iter_specs(range(config.n_min, config.n_max + 1),
                           range(config.d_min, config.d_max + 1),
                           range(config.t_min, config.t_max + 1),
                           config.kinds))


# -----------------------------------------------------------
#                PER-SPEC CHECKS
# -----------------------------------------------------------

def _carry_notes(found: PrimeDecomposition, details: dict):
    if I_OVERRIDE_NOTE in found.notes:
        details[I_OVERRIDE_NOTE] = found.notes[I_OVERRIDE_NOTE]


def _check_decomposition(spec: LexsegmentSpec, details: dict) -> str:
    found = decompose(spec)
    _carry_notes(found, details)
    truth = minimal_primes_bruteforce(build_segment(spec))
    if found.supports == truth.supports:
        return PASS
    details["decomposition"] = {"closed_form": found.supports, "oracle": truth.supports,
                                "provenance": [p.value for p in found.provenance]}
    return FAIL


def _check_betti(spec: LexsegmentSpec, details: dict) -> str:
    if spec.n > settings.HOCHSTER_CAP:
        return SKIP
    found = betti_for_spec(spec)
    if found is None:
        return SKIP
    table, source = found
    truth = hochster_betti(build_segment(spec))
    if table == truth:
        return PASS
    details["betti"] = {"source": source, "formula": table.rows(), "oracle": truth.rows()}
    return FAIL


def _check_classification(spec: LexsegmentSpec, details: dict) -> tuple[str, str]:
    verdict = classify(spec)
    truth = reisner_cm_check(build_segment(spec))
    if verdict.is_cm == truth.is_cm:
        return PASS, verdict.branch.value
    details["classification"] = {"branch": verdict.branch.value, "claimed": verdict.is_cm,
                                 "reisner": truth.is_cm, "pure": truth.is_pure,
                                 "witness": dict(verdict.witness)}
    return FAIL, verdict.branch.value


def _check_invariants(spec: LexsegmentSpec, details: dict) -> str:
    if spec.n > settings.HOCHSTER_CAP:
        return SKIP
    report = invariants_for_spec(spec, allow_oracle=False) if _formula_only(spec) else None
    if report is None:
        return SKIP
    ideal = build_segment(spec)
    dim, depth = krull_dim_oracle(ideal), depth_oracle(ideal)
    if report.dim_SmodI == dim and report.depth_SmodI == depth:
        return PASS
    details["invariants"] = {"closed_form": {"dim": report.dim_SmodI, "depth": report.depth_SmodI},
                             "oracle": {"dim": dim, "depth": depth}}
    return FAIL


def _formula_only(spec: LexsegmentSpec) -> bool:
    trace = normalize(spec)
    return trace.is_terminal or trace.residual.effective_kind != SegmentKind.ARBITRARY


def _check_splitting(spec: LexsegmentSpec, branch: str, details: dict) -> str:
    if branch != CmBranch.THM_3_2.value or spec.n > settings.HOCHSTER_CAP:
        return SKIP
    r = normalize(spec).residual
    ideal = build_segment(r)
    # generators with min 1 against those with min 2; the x1 part is x1 times a final segment
    Q, P = split_by_variable(ideal, 1)
    report = betti_splitting_check(ideal, P, Q)
    mono = betti_monotonicity_check(Q, ideal)
    if report.holds and report.pd_identity_holds and mono.holds:
        return PASS
    details["splitting"] = {"mismatches": [list(m) for m in report.mismatches],
                            "pd_identity": report.pd_identity_holds,
                            "monotonicity": [list(v) for v in mono.violations]}
    return FAIL


def check_spec(spec: LexsegmentSpec, use_oracle: bool = True) -> SweepRecord:
    details: dict = {}
    checks: dict[str, str] = {}
    branch = None
    completely = None
    try:
        completely = is_completely(spec)
        if completely != is_completely_by_intersection(spec):
            checks["completely"] = FAIL
            details["completely"] = {"criterion": completely, "intersection": not completely}
        else:
            checks["completely"] = PASS

        if not use_oracle:
            found = decompose(spec)
            _carry_notes(found, details)
            ideal = build_segment(spec)
            ok = all(found.contains(m) for m in ideal.masks)
            checks["decomposition"] = PASS if ok else FAIL
            branch = classify(spec).branch.value
        else:
            checks["decomposition"] = _check_decomposition(spec, details)
            checks["betti"] = _check_betti(spec, details)
            checks["classification"], branch = _check_classification(spec, details)
            checks["invariants"] = _check_invariants(spec, details)
            checks["splitting"] = _check_splitting(spec, branch, details)
    except (TSpreadError, InternalInconsistency) as e:
        logger.warning("%s: %s", spec.describe(), e)
        return SweepRecord(spec=SpecPayload.from_spec(spec), kind=spec.kind, is_completely=completely,
                           branch=branch, checks=checks, details=details,
                           trace=normalize(spec).describe(), error=f"{type(e).__name__}: {e}")

    record = SweepRecord(spec=SpecPayload.from_spec(spec), kind=spec.kind, is_completely=completely,
                         branch=branch, checks=checks, details=details)
    if record.failed:
        record.trace = normalize(spec).describe()
        logger.warning("%s: mismatch in %s", spec.describe(),
                       ", ".join(k for k, v in checks.items() if v == FAIL))
    return record


def conjecture_record(spec: LexsegmentSpec) -> SweepRecord:
    """dim S/I against the lower bound (d-1)t; recorded, never asserted."""
    bound = (spec.d - 1) * spec.t
    completely = is_completely(spec)
    try:
        dim = krull_dim_oracle(build_segment(spec))
    except TSpreadError as e:
        return SweepRecord(spec=SpecPayload.from_spec(spec), kind=spec.kind, is_completely=completely,
                           checks={}, error=str(e))
    holds = dim >= bound
    details = {"dim": dim, "bound": bound}
    if not holds:
        details["trace"] = normalize(spec).describe()
        logger.warning("potential counterexample: %s has dim %d < %d", spec.describe(), dim, bound)
    return SweepRecord(spec=SpecPayload.from_spec(spec), kind=spec.kind, is_completely=completely,
                       checks={"dim_bound": PASS if holds else FAIL}, details=details)


# -----------------------------------------------------------
#                RUNNER
# -----------------------------------------------------------

def _verify_with_oracle(spec: LexsegmentSpec) -> SweepRecord:
    return check_spec(spec, True)


def _verify_without_oracle(spec: LexsegmentSpec) -> SweepRecord:
    return check_spec(spec, False)


def run_sweep(specs: list[LexsegmentSpec], worker: Callable[[LexsegmentSpec], SweepRecord],
              workers: int = 1, progress: bool = False) -> Iterator[SweepRecord]:
    """
    Yields one record per spec, in input order. With workers > 1 the specs
    fan out to a process pool; map keeps the order, so output is identical to
    a serial run.
    """
    bar = tqdm(total=len(specs), disable=not progress, unit="spec")
    try:
        if workers <= 1:
            for spec in specs:
                yield worker(spec)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for record in pool.map(worker, specs, chunksize=max(1, len(specs) // (workers * 8))):
                    yield record
                    bar.update(1)
    finally:
        bar.close()


def verify_worker(config: SweepConfig) -> Callable[[LexsegmentSpec], SweepRecord]:
    return _verify_with_oracle if config.oracle else _verify_without_oracle


def summarize(records: Iterable[SweepRecord]) -> dict[str, dict[str, int]]:
    summary: dict[str, dict[str, int]] = {}
    for record in records:
        for name, outcome in record.checks.items():
            row = summary.setdefault(name, {PASS: 0, FAIL: 0, SKIP: 0})
            row[outcome] = row.get(outcome, 0) + 1
        if record.error:
            row = summary.setdefault("error", {PASS: 0, FAIL: 0, SKIP: 0})
            row[FAIL] += 1
    return summary


def format_summary(summary: dict[str, dict[str, int]]) -> str:
    lines = [f"{'check':<16}{'pass':>8}{'fail':>8}{'skip':>8}"]
    for name, row in summary.items():
        lines.append(f"{name:<16}{row[PASS]:>8}{row[FAIL]:>8}{row[SKIP]:>8}")
    return "\n".join(lines)
