"""
Cohen-Macaulay classification of t-spread lexsegment ideals.

The segment is normalized first. Degenerate shapes (principal, degree one, a
shared leading variable, tiny ambient) are settled directly; the residual is
then routed by (n, d, t, min(v)) to exactly one regime, and every verdict
carries the witness data that decided it.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from tspread.errors import InternalInconsistency
from tspread.modules.lexseg_model import (
    LexsegmentSpec,
    MonomialIdeal,
    NormalizationTrace,
    StepKind,
    build_segment,
    normalize,
    segment_generators,
)
from tspread.modules.monomial_core import (
    Ordering,
    SquarefreeMonomial,
    max_monomial,
    min_monomial,
    slex_compare,
)

logger = logging.getLogger(__name__)


class CmBranch(str, Enum):
    PRINCIPAL = "principal"
    DEGREE_ONE_INTERVAL = "degree-one-interval"
    SHARED_VARIABLE = "shared-variable"
    SMALL_N_FORCED = "small-n-forced"
    VERONESE = "veronese"
    INITIAL_NON_VERONESE = "initial-non-veronese"
    FINAL_NON_VERONESE = "final-non-veronese"
    THM_3_2 = "thm3.2"
    THM_3_3 = "thm3.3"
    THM_3_5A = "thm3.5a"
    THM_3_5B = "thm3.5b"
    THM_3_5C = "thm3.5c"
    THM_3_5_EXCLUDED = "thm3.5-excluded"


@dataclass(frozen=True)
class CmVerdict:
    is_cm: bool
    branch: CmBranch
    spec: LexsegmentSpec
    witness: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)


def intersect_ideals(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    return A.intersect(B)


def gcd_of_ideal(ideal: MonomialIdeal) -> SquarefreeMonomial:
    return ideal.gcd()


# -----------------------------------------------------------
#                DISTINGUISHED MONOMIALS
# -----------------------------------------------------------

def u_sharp(n: int, d: int, t: int) -> SquarefreeMonomial:
    """x_1 x_{n-(d-2)t} ... x_n, the smallest monomial of M_{n,d,t} divisible by x_1."""
    return SquarefreeMonomial.from_indices([1] + [n - s * t for s in range(d - 1)], n)


def v_sharp(n: int, d: int, t: int) -> SquarefreeMonomial:
    """x_2 x_{2+t} ... x_{2+(d-1)t}, the largest monomial with min = 2."""
    return SquarefreeMonomial.from_indices([2 + s * t for s in range(d)], n)


def admissible_v(n: int, d: int, t: int, ell: int) -> SquarefreeMonomial:
    """v_ell: x_{n-st-1} for s = ell..d-1 and x_{n-st} for s = 0..ell-1."""
    idx = [n - s * t - 1 for s in range(ell, d)] + [n - s * t for s in range(ell)]
    return SquarefreeMonomial.from_indices(idx, n)


def admissible_u(n: int, d: int, t: int, ell: int) -> SquarefreeMonomial:
    """u_ell: x_1 times x_{n-st-1} for s = ell..d-2 and x_{n-st} for s = 0..ell-1."""
    idx = [1] + [n - s * t - 1 for s in range(ell, d - 1)] + [n - s * t for s in range(ell)]
    return SquarefreeMonomial.from_indices(idx, n)


def _between(w: SquarefreeMonomial, hi: SquarefreeMonomial, lo: SquarefreeMonomial) -> bool:
    return slex_compare(hi, w) != Ordering.LESS and slex_compare(w, lo) != Ordering.LESS


# -----------------------------------------------------------
#                REGIMES FOR THE RESIDUAL
# -----------------------------------------------------------

def _regimes(r: LexsegmentSpec) -> list[str]:
    n, d, t = r.n, r.d, r.t
    j1 = r.v.min_index
    hits = []
    if j1 == 2 and 3 + (d - 1) * t <= n <= 3 + (2 * d - 3) * t:
        hits.append("height-two-split")
    if j1 == 2 and n >= 4 + (2 * d - 3) * t:
        hits.append("complete-intersection")
    if j1 > 2:
        hits.append("large-min")
    return hits


def _render(trace: NormalizationTrace, m: SquarefreeMonomial) -> str:
    return str(trace.lift_monomial(m))


def height_two_v(n: int, d: int, t: int) -> list[SquarefreeMonomial]:
    """v_1 = x_2 x_{2+t} ... x_{2+(d-1)t} and v_2, its last variable moved to x_{3+(d-1)t}."""
    head = [2 + s * t for s in range(d - 1)]
    return [SquarefreeMonomial.from_indices(head + [2 + (d - 1) * t], n),
            SquarefreeMonomial.from_indices(head + [3 + (d - 1) * t], n)]


def _height_two_split(r: LexsegmentSpec, trace: NormalizationTrace) -> CmVerdict:
    n, d, t = r.n, r.d, r.t
    v_list = height_two_v(n, d, t)
    u_list = [admissible_u(n, d, t, ell) for ell in range(d)]
    base = {"v_k": [_render(trace, x) for x in v_list], "u_ell": [_render(trace, x) for x in u_list]}
    # an unmixed ideal here has height two, which pins v to {v_1, v_2} and u to some u_ell
    if r.v not in v_list:
        return CmVerdict(False, CmBranch.THM_3_2, trace.original, {**base, "reason": "v is neither v_1 nor v_2"})
    if r.u not in u_list:
        return CmVerdict(False, CmBranch.THM_3_2, trace.original,
                         {**base, "reason": "u is not one of u_0 > ... > u_{d-1}"})

    ideal = build_segment(r)
    P = MonomialIdeal(n, tuple(segment_generators(n, d, t, r.u, u_sharp(n, d, t))))
    Q = MonomialIdeal(n, tuple(segment_generators(n, d, t, v_sharp(n, d, t), r.v)))
    g = gcd_of_ideal(ideal)
    PQ = intersect_ideals(P, Q)
    is_cm = g.degree == 0 and PQ.is_principal
    witness = {
        **base,
        "gcd": _render(trace, g),
        "P": [_render(trace, x) for x in P.generators],
        "Q": [_render(trace, x) for x in Q.generators],
        "P_cap_Q": [_render(trace, x) for x in PQ.generators],
        "P_cap_Q_principal": PQ.is_principal,
    }
    return CmVerdict(is_cm, CmBranch.THM_3_2, trace.original, witness)


def _complete_intersection(r: LexsegmentSpec, trace: NormalizationTrace) -> CmVerdict:
    n, d, t = r.n, r.d, r.t
    target_u, target_v = u_sharp(n, d, t), v_sharp(n, d, t)
    is_cm = r.u == target_u and r.v == target_v
    witness = {"u_required": _render(trace, target_u), "v_required": _render(trace, target_v)}
    return CmVerdict(is_cm, CmBranch.THM_3_3, trace.original, witness)


def _large_min(r: LexsegmentSpec, trace: NormalizationTrace) -> CmVerdict:
    n, d, t = r.n, r.d, r.t
    u, v = r.u, r.v
    v_list = [admissible_v(n, d, t, ell) for ell in range(d)]
    u_list = [admissible_u(n, d, t, ell) for ell in range(d)]
    base = {"v_ell": [_render(trace, x) for x in v_list], "u_ell": [_render(trace, x) for x in u_list]}

    if u == u_list[d - 1] and v == v_list[d - 1]:
        return CmVerdict(True, CmBranch.THM_3_5A, trace.original, {**base, "ell": d - 1})

    for ell in range(d - 1):
        if v != v_list[ell]:
            continue
        if t == 1:
            if u in (u_list[ell], u_list[ell + 1]):
                return CmVerdict(True, CmBranch.THM_3_5B, trace.original, {**base, "ell": ell})
        elif _between(u, u_list[ell], u_list[d - 1]):
            return CmVerdict(True, CmBranch.THM_3_5C, trace.original, {**base, "ell": ell})
        return CmVerdict(False, CmBranch.THM_3_5_EXCLUDED, trace.original,
                         {**base, "ell": ell, "reason": "u outside the admissible window"})

    reason = "v is not an admissible v_ell"
    if v == v_list[d - 1]:
        reason = "v = v_{d-1} but u != u_{d-1}"
    return CmVerdict(False, CmBranch.THM_3_5_EXCLUDED, trace.original, {**base, "ell": None, "reason": reason})


# -----------------------------------------------------------
#                CLASSIFY
# -----------------------------------------------------------

def classify(spec: LexsegmentSpec) -> CmVerdict:
    trace = normalize(spec)
    r = trace.residual

    if trace.is_terminal:
        if trace.terminal_kind == StepKind.PRINCIPAL:
            return CmVerdict(True, CmBranch.PRINCIPAL, spec, {"generator": str(build_segment(spec).generators[0])})
        if not trace.has_strip:
            lo, hi = r.u.min_index, r.v.min_index
            return CmVerdict(True, CmBranch.DEGREE_ONE_INTERVAL, spec,
                             {"variables": [trace.lift_index(i) for i in range(lo, hi + 1)]})

    if trace.has_strip:
        # I = m * I' with I' not principal: height-one primes next to taller ones
        return CmVerdict(False, CmBranch.SHARED_VARIABLE, spec,
                         {"shared_factor": str(trace.shared_factor), "residual": r.describe()})

    n, d, t = r.n, r.d, r.t
    top, bottom = max_monomial(n, d, t), min_monomial(n, d, t)

    if n <= 2 + (d - 1) * t:
        # only v = min is left with min(v) >= 2, so the segment is final
        return CmVerdict(r.u == top, CmBranch.SMALL_N_FORCED, spec, {"residual_n": n})
    if r.u == top and r.v == bottom:
        return CmVerdict(True, CmBranch.VERONESE, spec, {})
    if r.u == top:
        return CmVerdict(False, CmBranch.INITIAL_NON_VERONESE, spec, {"j1": trace.lift_index(r.v.min_index)})
    if r.v == bottom:
        return CmVerdict(False, CmBranch.FINAL_NON_VERONESE, spec, {"u": str(spec.u)})

    regimes = _regimes(r)
    if len(regimes) != 1:
        raise InternalInconsistency(f"{spec.describe()}: expected exactly one regime, got {regimes}")
    regime = regimes[0]
    if regime == "height-two-split":
        verdict = _height_two_split(r, trace)
    elif regime == "complete-intersection":
        verdict = _complete_intersection(r, trace)
    else:
        verdict = _large_min(r, trace)
    logger.debug("%s -> %s (%s)", spec.describe(), verdict.branch.value, verdict.is_cm)
    return verdict
