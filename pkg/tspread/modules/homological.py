"""
Graded Betti numbers and derived invariants from closed formulas.

Strongly stable segments use a binomial count over max(u) and final segments
its mirror over min(u). Completely segments with a linear resolution get a
signed difference of binomial sums. pd is always read off a table, never from a
separate closed form, so the corollary values can be cross-checked.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from tspread.errors import ContractViolation, InternalInconsistency, PreconditionError
from tspread.modules.lexseg_model import (
    LexsegmentSpec,
    MonomialIdeal,
    StepKind,
    build_segment,
    has_linear_resolution_completely,
    LinearResolutionVerdict,
    is_completely,
    linear_resolution_verdict,
    normalize,
)
from tspread.modules.monomial_core import SquarefreeMonomial, enumerate_M, is_t_spread, max_monomial, min_monomial

logger = logging.getLogger(__name__)


def binom(a: int, b: int) -> int:
    """Zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


# -----------------------------------------------------------
#                BETTI TABLE
# -----------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """β_{i,j}(I) keyed by (homological index i, internal degree j)."""

    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), b in self.entries.items():
            if b < 0:
                raise InternalInconsistency(f"negative Betti number beta_{i},{j} = {b}")
            if b:
                clean[(i, j)] = b
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(self.entries.items()))

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        out = [0] * (self.projective_dimension + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return out

    @property
    def projective_dimension(self) -> int:
        """max{i : β_i != 0}; -1 for the zero ideal."""
        return max((i for i, _ in self.entries), default=-1)

    @property
    def is_linear(self) -> bool:
        return len({j - i for i, j in self.entries}) <= 1

    def degree_shifted(self, k: int) -> "BettiTable":
        """Table of x_F * I for a squarefree x_F of degree k coprime to I."""
        return BettiTable({(i, j + k): b for (i, j), b in self.entries.items()})

    def homologically_shifted(self) -> "BettiTable":
        """(i, j) -> (i + 1, j): the β_{i-1,j} term of a splitting."""
        return BettiTable({(i + 1, j): b for (i, j), b in self.entries.items()})

    def __add__(self, other: "BettiTable") -> "BettiTable":
        merged = dict(self.entries)
        for key, b in other.entries.items():
            merged[key] = merged.get(key, 0) + b
        return BettiTable(merged)

    def rows(self) -> list[dict[str, int]]:
        return [{"i": i, "j": j, "beta": b} for (i, j), b in self.entries.items()]

    def __str__(self) -> str:
        # Macaulay2 `betti` layout: columns are i, rows are j - i
        if not self.entries:
            return "zero ideal"
        cols = range(self.projective_dimension + 1)
        row_keys = sorted({j - i for i, j in self.entries})
        totals = self.totals()
        width = max(len(str(b)) for b in totals + list(cols)) + 1
        lines = [" " * 8 + "".join(str(i).rjust(width) for i in cols),
                 "total:".rjust(7) + " " + "".join(str(b).rjust(width) for b in totals)]
        for r in row_keys:
            cells = []
            for i in cols:
                b = self.beta(i, i + r)
                cells.append((str(b) if b else ".").rjust(width))
            lines.append(f"{r}:".rjust(7) + " " + "".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class InvariantReport:
    ambient: int
    pd_I: int
    pd_SmodI: int
    depth_SmodI: int
    dim_SmodI: int
    height: int
    is_cm: bool
    source: Mapping[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.pd_SmodI != self.pd_I + 1:
            raise InternalInconsistency(f"pd(S/I) = {self.pd_SmodI} but pd(I) + 1 = {self.pd_I + 1}")
        if self.depth_SmodI + self.pd_SmodI != self.ambient:
            raise InternalInconsistency(
                f"Auslander-Buchsbaum fails: depth {self.depth_SmodI} + pd {self.pd_SmodI} != {self.ambient}")
        if self.dim_SmodI + self.height != self.ambient:
            raise InternalInconsistency(f"dim {self.dim_SmodI} + height {self.height} != {self.ambient}")
        if self.is_cm != (self.dim_SmodI == self.depth_SmodI):
            raise InternalInconsistency("is_cm disagrees with dim = depth")

    @classmethod
    def from_pd_and_height(cls, n: int, pd_SmodI: int, height: int, source: Mapping[str, str]) -> "InvariantReport":
        depth = n - pd_SmodI
        dim = n - height
        return cls(n, pd_SmodI - 1, pd_SmodI, depth, dim, height, dim == depth, dict(source))


# -----------------------------------------------------------
#                STRONG STABILITY GUARD
# -----------------------------------------------------------

def is_strongly_stable(ideal: MonomialIdeal, t: int, reverse: bool = False) -> bool:
    """
    t-spread strong stability: for u in G(I), j in supp(u) and i < j (i > j
    with reverse=True), x_i u / x_j in I whenever it is t-spread.
    """
    n = ideal.ambient
    for g in ideal.generators:
        support = g.support
        for j in support:
            others = range(j + 1, n + 1) if reverse else range(1, j)
            for i in others:
                if i in support:
                    continue
                swapped = g.without(j).times(i)
                if is_t_spread(swapped, t) and not ideal.contains(swapped.mask):
                    logger.debug("not strongly stable: x%d*%s/x%d missing", i, g, j)
                    return False
    return True


# -----------------------------------------------------------
#                CLOSED-FORM BETTI NUMBERS
# -----------------------------------------------------------

def betti_strongly_stable(ideal: MonomialIdeal, t: int) -> BettiTable:
    if not is_strongly_stable(ideal, t):
        raise PreconditionError(f"{ideal} is not {t}-spread strongly stable")
    entries: dict[tuple[int, int], int] = {}
    for g in ideal.generators:
        j = g.degree
        a = g.max_index - t * (j - 1) - 1
        for i in range(0, max(a, 0) + 1):
            b = binom(a, i)
            if b:
                entries[(i, i + j)] = entries.get((i, i + j), 0) + b
    return BettiTable(entries)


def betti_final(ideal: MonomialIdeal, t: int, n: int) -> BettiTable:
    if ideal.ambient != n:
        raise ContractViolation(f"ideal lives in {ideal.ambient} variables, n={n}")
    if not is_strongly_stable(ideal, t, reverse=True):
        raise PreconditionError(f"{ideal} is not {t}-spread strongly stable for the reversed order")
    entries: dict[tuple[int, int], int] = {}
    for g in ideal.generators:
        j = g.degree
        a = n - g.min_index - t * (j - 1)
        for i in range(0, max(a, 0) + 1):
            b = binom(a, i)
            if b:
                entries[(i, i + j)] = entries.get((i, i + j), 0) + b
    return BettiTable(entries)


def betti_completely_linear(u: SquarefreeMonomial, v: SquarefreeMonomial, n: int, d: int, t: int) -> list[int]:
    spec = LexsegmentSpec.from_endpoints(n, d, t, u, v)
    if not has_linear_resolution_completely(spec):
        raise PreconditionError(f"{spec.describe()} has no linear resolution")

    monomials = enumerate_M(n, d, t)
    final_part = monomials[monomials.index(u):]
    below_v = monomials[monomials.index(v) + 1:]
    out = []
    for i in range(0, n + 1):
        b = sum(binom(n - w.min_index - (d - 1) * t, i) for w in final_part)
        b -= sum(binom(w.max_index - (d - 1) * t - 1, i) for w in below_v)
        if b < 0:
            raise InternalInconsistency(f"negative total Betti number beta_{i} = {b} for {spec.describe()}")
        out.append(b)
    while out and out[-1] == 0:
        out.pop()
    return out


def _residual_table(r: LexsegmentSpec) -> tuple[BettiTable, str] | None:
    n, d, t = r.n, r.d, r.t
    ideal = build_segment(r)
    if r.u == max_monomial(n, d, t):
        return betti_strongly_stable(ideal, t), "strongly-stable-count"
    if r.v == min_monomial(n, d, t):
        return betti_final(ideal, t, n), "final-count"
    if is_completely(r) and linear_resolution_verdict(r) == LinearResolutionVerdict.LINEAR:
        totals = betti_completely_linear(r.u, r.v, n, d, t)
        return BettiTable({(i, i + d): b for i, b in enumerate(totals)}), "completely-linear-count"
    return None


def betti_for_spec(spec: LexsegmentSpec) -> tuple[BettiTable, str] | None:
    """
    Formula Betti table of any segment, or None when no formula applies.

    Restricting the ambient ring leaves Betti numbers alone, and splitting off
    a coprime monomial of degree k shifts every internal degree by k.
    """
    trace = normalize(spec)
    k = len(trace.factored)
    if trace.is_terminal:
        r = trace.residual
        if trace.terminal_kind == StepKind.PRINCIPAL:
            table, source = BettiTable({(0, r.d): 1}), "principal"
        else:
            width = r.v.min_index - r.u.min_index + 1
            table = BettiTable({(i, i + 1): binom(width, i + 1) for i in range(width)})
            source = "koszul"
    else:
        found = _residual_table(trace.residual)
        if found is None:
            return None
        table, source = found
    return table.degree_shifted(k), source


# -----------------------------------------------------------
#                INVARIANTS
# -----------------------------------------------------------

def invariants_initial(v: SquarefreeMonomial, n: int, d: int, t: int) -> InvariantReport:
    j1 = v.min_index
    if j1 < 2:
        raise PreconditionError(f"initial invariants need min(v) >= 2, got v={v}")
    if d < 2:
        raise PreconditionError("initial invariants need d >= 2")
    tag = "initial-closed-form"
    pd = n - (d - 1) * t
    return InvariantReport.from_pd_and_height(n, pd, j1, {f: tag for f in ("pd", "depth", "dim", "height")})


def invariants_final(u: SquarefreeMonomial, n: int, d: int, t: int) -> InvariantReport:
    if u.min_index != 1:
        raise PreconditionError(f"final invariants need min(u) = 1, got u={u}")
    if d < 2:
        raise PreconditionError("final invariants need d >= 2")
    tag = "final-closed-form"
    pd = n - (d - 1) * t
    dim = (d - 1) * t if u == max_monomial(n, d, t) else 1 + (d - 1) * t
    return InvariantReport.from_pd_and_height(n, pd, n - dim, {f: tag for f in ("pd", "depth", "dim", "height")})


def _residual_report(r: LexsegmentSpec, allow_oracle: bool) -> InvariantReport:
    n, d, t = r.n, r.d, r.t
    if r.u == max_monomial(n, d, t):
        return invariants_initial(r.v, n, d, t)
    if r.v == min_monomial(n, d, t):
        return invariants_final(r.u, n, d, t)

    from tspread.modules.oracle import hochster_betti
    from tspread.modules.primary_decomp import closed_form_available, decompose

    source: dict[str, str] = {}
    found = betti_for_spec(r)
    if found is not None:
        pd_I = found[0].projective_dimension
        source["pd"] = found[1]
    elif allow_oracle:
        pd_I = hochster_betti(build_segment(r)).projective_dimension
        source["pd"] = "oracle"
    else:
        raise PreconditionError(f"no Betti formula for {r.describe()} and the oracle is disabled")
    source["depth"] = source["pd"]

    if closed_form_available(r) or allow_oracle:
        height = decompose(r).height
        source["height"] = "closed-form-decomposition" if closed_form_available(r) else "oracle"
    else:
        raise PreconditionError(f"no closed-form decomposition for {r.describe()} and the oracle is disabled")
    source["dim"] = source["height"]
    return InvariantReport.from_pd_and_height(n, pd_I + 1, height, source)


def invariants_for_spec(spec: LexsegmentSpec, allow_oracle: bool = True) -> InvariantReport:
    """Invariants of any segment in the caller's ambient ring, each field tagged with its source."""
    n = spec.n
    trace = normalize(spec)
    r = trace.residual
    if trace.is_terminal:
        if trace.terminal_kind == StepKind.PRINCIPAL:
            pd_SmodI, height, tag = 1, 1, "principal"
        else:
            width = r.v.min_index - r.u.min_index + 1
            pd_SmodI, height, tag = width, width, "koszul"
        source = {f: tag for f in ("pd", "depth", "dim", "height")}
    else:
        inner = _residual_report(r, allow_oracle)
        pd_SmodI, height, source = inner.pd_SmodI, inner.height, dict(inner.source)

    if trace.has_strip:
        # x_F * I' with F nonempty: the split-off variables are height-one primes
        height = 1
        source["height"] = source["dim"] = "split-variable"
    return InvariantReport.from_pd_and_height(n, pd_SmodI, height, source)


# -----------------------------------------------------------
#                SPLITTINGS AND MONOTONICITY
# -----------------------------------------------------------

@dataclass(frozen=True)
class SplittingReport:
    holds: bool
    pd_identity_holds: bool
    pd_I: int
    pd_P: int
    pd_Q: int
    pd_PQ: int
    mismatches: tuple[tuple[int, int, int, int], ...] = ()


def betti_splitting_check(ideal: MonomialIdeal, P: MonomialIdeal, Q: MonomialIdeal) -> SplittingReport:
    """
    Whether β_{i,j}(I) = β_{i,j}(P) + β_{i,j}(Q) + β_{i-1,j}(P ∩ Q) on oracle
    tables. mismatches lists (i, j, lhs, rhs).
    """
    from tspread.modules.oracle import hochster_betti

    if not (ideal.ambient == P.ambient == Q.ambient):
        raise ContractViolation("splitting needs one ambient ring")
    gens = set(ideal.generators)
    p_gens, q_gens = set(P.generators), set(Q.generators)
    if p_gens & q_gens or (p_gens | q_gens) != gens:
        raise ContractViolation("G(P) and G(Q) must partition G(I)")

    tI = hochster_betti(ideal)
    tP = hochster_betti(P)
    tQ = hochster_betti(Q)
    tPQ = hochster_betti(P.intersect(Q))
    rhs = tP + tQ + tPQ.homologically_shifted()

    keys = sorted(set(tI.entries) | set(rhs.entries))
    mismatches = tuple((i, j, tI.beta(i, j), rhs.beta(i, j)) for i, j in keys if tI.beta(i, j) != rhs.beta(i, j))
    pd_I = tI.projective_dimension
    pd_PQ = tPQ.projective_dimension
    expected = max(tP.projective_dimension, tQ.projective_dimension, pd_PQ + 1 if tPQ.entries else -1)
    return SplittingReport(not mismatches, pd_I == expected, pd_I, tP.projective_dimension,
                           tQ.projective_dimension, pd_PQ, mismatches)


def split_by_variable(ideal: MonomialIdeal, index: int) -> tuple[MonomialIdeal, MonomialIdeal]:
    """(P, Q) with Q the generators divisible by x_index."""
    bit = 1 << (index - 1)
    P = [g for g in ideal.generators if not g.mask & bit]
    Q = [g for g in ideal.generators if g.mask & bit]
    return MonomialIdeal(ideal.ambient, tuple(P)), MonomialIdeal(ideal.ambient, tuple(Q))


@dataclass(frozen=True)
class MonotonicityReport:
    holds: bool
    violations: tuple[tuple[int, int, int], ...] = ()


def betti_monotonicity_check(J: MonomialIdeal, I: MonomialIdeal) -> MonotonicityReport:
    """
    For equigenerated J ⊆ I of the same degree d: β_{i,i+d}(J) <= β_{i,i+d}(I),
    and pd(I) >= pd(J) when J has a linear resolution. violations lists
    (i, β(J), β(I)); a pd failure is reported with i = -1.
    """
    from tspread.modules.oracle import hochster_betti

    degrees = {g.degree for g in J.generators} | {g.degree for g in I.generators}
    if len(degrees) != 1:
        raise ContractViolation("monotonicity needs equigenerated ideals of one degree")
    if not all(I.contains(m) for m in J.masks):
        raise ContractViolation("monotonicity needs J inside I")
    d = degrees.pop()
    tJ, tI = hochster_betti(J), hochster_betti(I)
    violations = []
    for i in range(max(tJ.projective_dimension, tI.projective_dimension) + 1):
        if tJ.beta(i, i + d) > tI.beta(i, i + d):
            violations.append((i, tJ.beta(i, i + d), tI.beta(i, i + d)))
    if tJ.is_linear and tI.projective_dimension < tJ.projective_dimension:
        violations.append((-1, tJ.projective_dimension, tI.projective_dimension))
    return MonotonicityReport(not violations, tuple(violations))


# -----------------------------------------------------------
#                HILBERT NUMERATOR
# -----------------------------------------------------------

def hilbert_numerator(ideal: MonomialIdeal) -> dict[int, int]:
    """
    Numerator of the Hilbert series of S/I by inclusion-exclusion over lcms
    of generator subsets, merged by lcm mask as generators are added.
    """
    signed: dict[int, int] = {0: 1}
    for g in ideal.masks:
        update = dict(signed)
        for m, c in signed.items():
            update[m | g] = update.get(m | g, 0) - c
        signed = {m: c for m, c in update.items() if c}
    out: dict[int, int] = {}
    for m, c in signed.items():
        deg = m.bit_count()
        out[deg] = out.get(deg, 0) + c
    return {k: c for k, c in sorted(out.items()) if c}


def numerator_from_betti(table: BettiTable) -> dict[int, int]:
    """1 - sum (-1)^i β_{i,j}(I) T^j"""
    out: dict[int, int] = {0: 1}
    for (i, j), b in table.entries.items():
        out[j] = out.get(j, 0) - (-1) ** i * b
    return {k: c for k, c in sorted(out.items()) if c}
