"""
Standard primary decompositions of t-spread lexsegment ideals.

Every minimal prime of a squarefree monomial ideal is generated by variables,
so a decomposition is a list of supports A with p_A = (x_i : i in A). The
closed forms below build the facets of the Stanley-Reisner complex from
supp_t / cosupp_t and return their complements.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

from tspread.errors import ContractViolation, InternalInconsistency, PreconditionError
from tspread.modules.lexseg_model import (
    LexsegmentSpec,
    SegmentKind,
    StepKind,
    build_segment,
    is_completely,
    normalize,
)
from tspread.modules.monomial_core import (
    IndexSet,
    Ordering,
    SquarefreeMonomial,
    cosupp_t,
    enumerate_M,
    interval,
    is_t_spread,
    mask_of,
    max_monomial,
    min_monomial,
    slex_compare,
    supp_t,
)

logger = logging.getLogger(__name__)

OPEN_QUESTION_NOTE = "closed form unavailable (open question)"
# F_p whose size/slex membership condition disagreed with the containment test
I_OVERRIDE_NOTE = "I_overrides"


class ProvenanceTag(str, Enum):
    F_P = "F_p"
    F = "F"
    G = "G"
    H = "H"
    H_LEADING = "H1"
    F_TILDE = "F~"
    VERONESE = "veronese-D"
    ORACLE = "oracle"
    PRINCIPAL = "principal"
    INTERVAL = "interval"
    SPLIT_VARIABLE = "split-variable"


@dataclass(frozen=True)
class PrimeSupport:
    variables: IndexSet
    ambient: int

    def __post_init__(self):
        if not self.variables:
            raise ContractViolation("a monomial prime needs at least one variable")
        if min(self.variables) < 1 or max(self.variables) > self.ambient:
            raise ContractViolation(f"prime support {sorted(self.variables)} not inside [1, {self.ambient}]")

    @property
    def height(self) -> int:
        return len(self.variables)

    @property
    def mask(self) -> int:
        return mask_of(self.variables)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.height, tuple(sorted(self.variables))

    def __str__(self) -> str:
        return "(" + ",".join(f"x{i}" for i in sorted(self.variables)) + ")"


@dataclass(frozen=True)
class PrimeDecomposition:
    ambient: int
    primes: tuple[PrimeSupport, ...]
    provenance: tuple[ProvenanceTag, ...]
    notes: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(p.variables)) for p in self.primes]

    @property
    def heights(self) -> list[int]:
        return [p.height for p in self.primes]

    @property
    def height(self) -> int:
        return min(self.heights)

    @property
    def is_unmixed(self) -> bool:
        return len(set(self.heights)) <= 1

    def contains(self, mask: int) -> bool:
        """x_mask lies in p_A exactly when mask meets A."""
        return all(mask & p.mask for p in self.primes)

    def __str__(self) -> str:
        return " ∩ ".join(str(p) for p in self.primes)


def finalize(ambient: int, tagged: Iterable[tuple[IndexSet, ProvenanceTag]],
             notes: Mapping[str, Any] | None = None) -> PrimeDecomposition:
    """
    Sort into canonical (height, support) order and refuse any containment.

    Closed forms are supposed to be irredundant already, so a containment
    here is a bug in the construction and is never repaired silently.
    """
    items = [(PrimeSupport(frozenset(a), ambient), tag) for a, tag in tagged]
    items.sort(key=lambda it: it[0].sort_key)
    for i, (p, tp) in enumerate(items):
        for q, tq in items[i + 1:]:
            if p.variables <= q.variables:
                raise InternalInconsistency(
                    f"redundant prime: {p} [{tp.value}] is contained in {q} [{tq.value}]")
    return PrimeDecomposition(ambient, tuple(p for p, _ in items), tuple(tag for _, tag in items),
                              dict(notes or {}))


def _complement(n: int, s: IndexSet) -> IndexSet:
    return interval(1, n) - s


# -----------------------------------------------------------
#                FAMILIES OF FACETS
# -----------------------------------------------------------

def _check_monomial(m: SquarefreeMonomial, n: int, d: int, t: int, name: str):
    if m.ambient != n or m.degree != d or not is_t_spread(m, t):
        raise ContractViolation(f"{name}={m} is not a {t}-spread monomial of degree {d} in {n} variables")


def initial_prime_supports(v: SquarefreeMonomial, t: int) -> list[IndexSet]:
    """F_p = [j_p] minus supp_t(x_{j_1} ... x_{j_{p-1}}), p = 1..d."""
    j = v.support
    out = []
    for p in range(len(j)):
        head = SquarefreeMonomial.from_indices(j[:p], v.ambient)
        out.append(interval(1, j[p]) - supp_t(head, t))
    return out


def initial_family(v: SquarefreeMonomial, n: int, d: int, t: int) -> list[IndexSet]:
    """Facets supp_t(w) for w in M_{n+1-t,d-1,t} slex-above v / x_max(v)."""
    top = n + 1 - t
    bound = v.without(v.max_index)
    bound = SquarefreeMonomial(bound.mask, top)
    out = []
    for w in enumerate_M(top, d - 1, t):
        if slex_compare(w, bound) != Ordering.GREATER:
            break
        out.append(supp_t(w, t, n))
    return out


def _final_candidates(n: int, d: int, t: int) -> list[SquarefreeMonomial]:
    # w of degree d-1 with x1*w in M_{n,d,t}: t-spread inside [1+t, n]
    return [m.shifted(t, n) for m in enumerate_M(n - t, d - 1, t)]


def final_families(u: SquarefreeMonomial, n: int, d: int, t: int) -> tuple[list[IndexSet], list[IndexSet]]:
    """(G, H): cosupp_t(w) + {1} for w above u / x1, and cosupp_t(w) for the rest."""
    pivot = u.without(1)
    G, H = [], []
    for w in _final_candidates(n, d, t):
        if slex_compare(w, pivot) == Ordering.GREATER:
            G.append(cosupp_t(w, t) | {1})
        else:
            H.append(cosupp_t(w, t))
    return G, H


def leading_final_family(n: int, d: int, t: int, G: Iterable[IndexSet]) -> list[IndexSet]:
    """
    Facets cosupp_t(w) with min(w) = t, the ones holding [1, t].

    x1*w is not t-spread for these w, so H never lists them. Each is a face
    (d - 1 disjoint blocks of length t hold no t-spread d-set) and every face
    of size 1 + (d - 1)t is a G, so it is a facet exactly when no one-point
    extension lands in G.
    """
    G_set = set(G)
    full = interval(1, n)
    out = []
    for m in enumerate_M(n - t + 1, d - 1, t):
        w = m.shifted(t - 1, n)
        if w.min_index != t:
            break
        H = cosupp_t(w, t)
        if all((H | {j}) not in G_set for j in full - H):
            out.append(H)
    return out


# -----------------------------------------------------------
#                CLOSED FORMS
# -----------------------------------------------------------

def decompose_veronese(n: int, d: int, t: int) -> PrimeDecomposition:
    if n < 1 + (d - 1) * t:
        raise PreconditionError(f"M_{{{n},{d},{t}}} is empty")
    if d == 1:
        return finalize(n, [(interval(1, n), ProvenanceTag.VERONESE)])
    tagged = [(_complement(n, supp_t(w, t, n)), ProvenanceTag.VERONESE) for w in enumerate_M(n + 1 - t, d - 1, t)]
    return finalize(n, tagged)


def decompose_initial(v: SquarefreeMonomial, n: int, d: int, t: int) -> PrimeDecomposition:
    _check_monomial(v, n, d, t, "v")
    if d < 2:
        raise PreconditionError("initial closed form needs d >= 2")
    if v.min_index < 2:
        raise PreconditionError(f"initial closed form needs min(v) >= 2, got v={v}; normalize first")

    tagged = [(F, ProvenanceTag.F_P) for F in initial_prime_supports(v, t)]
    tagged += [(_complement(n, F), ProvenanceTag.F) for F in initial_family(v, n, d, t)]
    return finalize(n, tagged)


def decompose_final(u: SquarefreeMonomial, n: int, d: int, t: int) -> PrimeDecomposition:
    _check_monomial(u, n, d, t, "u")
    if d < 2:
        raise PreconditionError("final closed form needs d >= 2")
    if u.min_index != 1:
        raise PreconditionError(f"final closed form needs min(u) = 1, got u={u}; normalize first")
    if u == max_monomial(n, d, t):
        return decompose_veronese(n, d, t)

    G, H = final_families(u, n, d, t)
    H1 = leading_final_family(n, d, t, G)
    tagged = [(_complement(n, F), ProvenanceTag.G) for F in G]
    tagged += [(_complement(n, F), ProvenanceTag.H) for F in H]
    tagged += [(_complement(n, F), ProvenanceTag.H_LEADING) for F in H1]
    return finalize(n, tagged, {"G": len(G), "H": len(H), "H1": len(H1)})


def decompose_completely(u: SquarefreeMonomial, v: SquarefreeMonomial, n: int, d: int, t: int) -> PrimeDecomposition:
    """
    Facets of the complex are G, the complements of the F_p with p in I, and
    the members of F that no G swallows.

    p leaves I when [n] minus F_p lies inside some G; since 1 is in every F_p
    and every G, that G is the facet with 1 added. F~ keeps F in F exactly
    when F + {j} is outside G for every j not in F.
    """
    _check_monomial(u, n, d, t, "u")
    _check_monomial(v, n, d, t, "v")
    if d < 2:
        raise PreconditionError("completely closed form needs d >= 2")
    if u.min_index != 1 or v.min_index < 2:
        raise PreconditionError(f"completely closed form needs min(u) = 1 < min(v), got u={u}, v={v}")
    spec = LexsegmentSpec.from_endpoints(n, d, t, u, v)
    if spec.is_veronese:
        raise PreconditionError("Veronese ideal: use decompose_veronese")
    if not is_completely(spec):
        raise PreconditionError(f"{spec.describe()} is not completely; use the oracle")

    G, _ = final_families(u, n, d, t)
    G_set = set(G)
    full = interval(1, n)

    F_p = initial_prime_supports(v, t)
    I_kept = []
    overrides = []
    for p, F in enumerate(F_p, start=1):
        facet = full - F
        swallowed = any(facet <= g for g in G)
        stated = (len(facet) == (d - 1) * t
                  and slex_compare(v.without(v.support[p - 1]), u.without(1)) == Ordering.GREATER)
        if swallowed != stated:
            logger.info("F_%d of %s: containment test says %s, size/slex condition says %s",
                        p, spec.describe(), "drop" if swallowed else "keep", "drop" if stated else "keep")
            overrides.append({"p": p, "prime": sorted(F), "containment": "drop" if swallowed else "keep",
                              "condition": "drop" if stated else "keep"})
        if not swallowed:
            I_kept.append(p)

    F_tilde = []
    for F in initial_family(v, n, d, t):
        if all((F | {j}) not in G_set for j in full - F):
            F_tilde.append(F)

    tagged = [(_complement(n, g), ProvenanceTag.G) for g in G]
    tagged += [(F_p[p - 1], ProvenanceTag.F_P) for p in I_kept]
    tagged += [(_complement(n, F), ProvenanceTag.F_TILDE) for F in F_tilde]
    notes: dict[str, Any] = {"I": I_kept, "F~": [sorted(F) for F in F_tilde]}
    if overrides:
        notes[I_OVERRIDE_NOTE] = overrides
    return finalize(n, tagged, notes)


def facet_sizes(decomposition: PrimeDecomposition) -> list[int]:
    """Cardinalities of the facets [n] minus A, one per prime."""
    return [decomposition.ambient - p.height for p in decomposition.primes]


# -----------------------------------------------------------
#                DISPATCH
# -----------------------------------------------------------

def _decompose_residual(r: LexsegmentSpec) -> PrimeDecomposition:
    n, d, t = r.n, r.d, r.t
    if r.is_veronese:
        return decompose_veronese(n, d, t)
    if r.u == max_monomial(n, d, t):
        return decompose_initial(r.v, n, d, t)
    if r.v == min_monomial(n, d, t):
        return decompose_final(r.u, n, d, t)
    if is_completely(r):
        return decompose_completely(r.u, r.v, n, d, t)

    from tspread.modules.oracle import minimal_primes_bruteforce

    logger.info("%s: %s, using the oracle", r.describe(), OPEN_QUESTION_NOTE)
    found = minimal_primes_bruteforce(build_segment(r))
    return PrimeDecomposition(found.ambient, found.primes, found.provenance, {"note": OPEN_QUESTION_NOTE})


def decompose(spec: LexsegmentSpec) -> PrimeDecomposition:
    """Decomposition of any lexsegment ideal, in the caller's coordinates."""
    trace = normalize(spec)
    if trace.is_terminal:
        tag = ProvenanceTag.PRINCIPAL if trace.terminal_kind == StepKind.PRINCIPAL else ProvenanceTag.INTERVAL
        residual_tagged = [(p, tag) for p in trace.terminal]
        notes: dict[str, Any] = {}
    else:
        found = _decompose_residual(trace.residual)
        residual_tagged = [(p.variables, tag) for p, tag in zip(found.primes, found.provenance)]
        notes = dict(found.notes)

    tagged = [(trace.lift_set(p), tag) for p, tag in residual_tagged]
    tagged += [(frozenset({f}), ProvenanceTag.SPLIT_VARIABLE) for f in trace.factored]
    if trace.steps:
        notes["trace"] = trace.describe()
    return finalize(spec.n, tagged, notes)


def closed_form_available(spec: LexsegmentSpec) -> bool:
    trace = normalize(spec)
    if trace.is_terminal:
        return True
    r = trace.residual
    return r.effective_kind != SegmentKind.ARBITRARY or is_completely(r)
