"""
t-spread lexsegments and the ideals they generate.

Covers the segment description (n, d, t, u, v, kind), materialization as a monomial
ideal, the normalization that strips degenerate inputs down to a residual
segment with min(u) = 1 < min(v), and the completely-lexsegment and
linear-resolution criteria.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from tspread.config import settings
from tspread.errors import ContractViolation, OutOfRange, PreconditionError
from tspread.modules.monomial_core import (
    IndexSet,
    Ordering,
    SquarefreeMonomial,
    enumerate_M,
    indices_of,
    is_t_spread,
    lex_compare,
    max_monomial,
    min_monomial,
    slex_compare,
)

logger = logging.getLogger(__name__)


class SegmentKind(str, Enum):
    INITIAL = "initial"
    FINAL = "final"
    ARBITRARY = "arbitrary"


def classify_kind(n: int, d: int, t: int, u: SquarefreeMonomial, v: SquarefreeMonomial) -> SegmentKind:
    if u == max_monomial(n, d, t):
        return SegmentKind.INITIAL
    if v == min_monomial(n, d, t):
        return SegmentKind.FINAL
    return SegmentKind.ARBITRARY


# -----------------------------------------------------------
#                LEXSEGMENT SPEC
# -----------------------------------------------------------

@dataclass(frozen=True)
class LexsegmentSpec:
    n: int
    d: int
    t: int
    u: SquarefreeMonomial
    v: SquarefreeMonomial
    kind: SegmentKind = SegmentKind.ARBITRARY

    def __post_init__(self):
        n, d, t = self.n, self.d, self.t
        if d < 1 or t < 1:
            raise ContractViolation(f"need d >= 1 and t >= 1, got d={d}, t={t}")
        if n > settings.FORMULA_CAP:
            raise OutOfRange(f"n={n} exceeds the formula cap {settings.FORMULA_CAP}")
        if n < 1 + (d - 1) * t:
            raise ContractViolation(f"M_{{{n},{d},{t}}} is empty: need n >= {1 + (d - 1) * t}")
        for name, m in (("u", self.u), ("v", self.v)):
            if m.ambient != n:
                raise ContractViolation(f"{name}={m} lives in {m.ambient} variables, spec has n={n}")
            if m.degree != d:
                raise ContractViolation(f"{name}={m} has degree {m.degree}, expected {d}")
            if not is_t_spread(m, t):
                raise ContractViolation(f"{name}={m} is not {t}-spread")
        if slex_compare(self.u, self.v) == Ordering.LESS:
            raise ContractViolation(f"u={self.u} is slex-smaller than v={self.v}")
        kind = SegmentKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == SegmentKind.INITIAL and self.u != max_monomial(n, d, t):
            raise ContractViolation(f"initial segment must start at {max_monomial(n, d, t)}, got u={self.u}")
        if kind == SegmentKind.FINAL and self.v != min_monomial(n, d, t):
            raise ContractViolation(f"final segment must end at {min_monomial(n, d, t)}, got v={self.v}")

    # ----- constructors -----

    @classmethod
    def initial(cls, n: int, d: int, t: int, v: Iterable[int]) -> "LexsegmentSpec":
        return cls(n, d, t, max_monomial(n, d, t), SquarefreeMonomial.from_indices(v, n), SegmentKind.INITIAL)

    @classmethod
    def final(cls, n: int, d: int, t: int, u: Iterable[int]) -> "LexsegmentSpec":
        return cls(n, d, t, SquarefreeMonomial.from_indices(u, n), min_monomial(n, d, t), SegmentKind.FINAL)

    @classmethod
    def arbitrary(cls, n: int, d: int, t: int, u: Iterable[int], v: Iterable[int]) -> "LexsegmentSpec":
        return cls(n, d, t, SquarefreeMonomial.from_indices(u, n), SquarefreeMonomial.from_indices(v, n),
                   SegmentKind.ARBITRARY)

    @classmethod
    def from_endpoints(cls, n: int, d: int, t: int, u: SquarefreeMonomial, v: SquarefreeMonomial) -> "LexsegmentSpec":
        """Build a spec whose kind is read off the endpoints."""
        if u.ambient != n or v.ambient != n:
            raise ContractViolation(f"endpoints must live in {n} variables")
        return cls(n, d, t, u, v, classify_kind(n, d, t, u, v))

    # ----- derived facts -----

    @property
    def is_veronese(self) -> bool:
        return self.u == max_monomial(self.n, self.d, self.t) and self.v == min_monomial(self.n, self.d, self.t)

    @property
    def effective_kind(self) -> SegmentKind:
        return classify_kind(self.n, self.d, self.t, self.u, self.v)

    def describe(self) -> str:
        return f"({self.n},{self.d},{self.t}) {self.kind.value} u={self.u} v={self.v}"


# -----------------------------------------------------------
#                MONOMIAL IDEAL
# -----------------------------------------------------------

def _minimalize(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), indices_of(x))):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class MonomialIdeal:
    """Squarefree monomial ideal given by its minimal generators G(I)."""

    ambient: int
    generators: tuple[SquarefreeMonomial, ...] = field(default_factory=tuple)

    @classmethod
    def from_generators(cls, ambient: int, gens: Iterable[SquarefreeMonomial]) -> "MonomialIdeal":
        masks = []
        for g in gens:
            if g.ambient != ambient:
                raise ContractViolation(f"generator {g} lives in {g.ambient} variables, ideal has {ambient}")
            masks.append(g.mask)
        return cls(ambient, tuple(SquarefreeMonomial(m, ambient) for m in _minimalize(masks)))

    @classmethod
    def from_masks(cls, ambient: int, masks: Iterable[int]) -> "MonomialIdeal":
        return cls(ambient, tuple(SquarefreeMonomial(m, ambient) for m in _minimalize(masks)))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(g.mask for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_principal(self) -> bool:
        return len(self.generators) == 1

    def __len__(self) -> int:
        return len(self.generators)

    def contains(self, mask: int) -> bool:
        """Membership of the squarefree monomial x_mask."""
        return any(g & mask == g for g in self.masks)

    def generators_in_degree(self, j: int) -> list[SquarefreeMonomial]:
        return [g for g in self.generators if g.degree == j]

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.ambient != other.ambient:
            raise ContractViolation(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        return MonomialIdeal.from_masks(self.ambient, (a | b for a in self.masks for b in other.masks))

    def gcd(self) -> SquarefreeMonomial:
        if self.is_zero:
            raise ContractViolation("gcd of the zero ideal is undefined")
        common = -1
        for m in self.masks:
            common &= m
        return SquarefreeMonomial(common, self.ambient)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


# -----------------------------------------------------------
#                SEGMENTS
# -----------------------------------------------------------

def segment_generators(n: int, d: int, t: int, u: SquarefreeMonomial, v: SquarefreeMonomial) -> list[SquarefreeMonomial]:
    """All w in M_{n,d,t} with u >=slex w >=slex v, slex-descending."""
    if slex_compare(u, v) == Ordering.LESS:
        raise ContractViolation(f"u={u} is slex-smaller than v={v}")
    monomials = enumerate_M(n, d, t)
    try:
        lo = monomials.index(u)
        hi = monomials.index(v)
    except ValueError:
        raise ContractViolation(f"{u} or {v} is not in M_{{{n},{d},{t}}}")
    return monomials[lo:hi + 1]


def build_segment(spec: LexsegmentSpec) -> MonomialIdeal:
    return MonomialIdeal(spec.n, tuple(segment_generators(spec.n, spec.d, spec.t, spec.u, spec.v)))


def initial_extension(spec: LexsegmentSpec) -> MonomialIdeal:
    """J = (L_t(max, v))"""
    return build_segment(LexsegmentSpec(spec.n, spec.d, spec.t, max_monomial(spec.n, spec.d, spec.t), spec.v,
                                        SegmentKind.INITIAL))


def final_extension(spec: LexsegmentSpec) -> MonomialIdeal:
    """T = (L_t(u, min))"""
    return build_segment(LexsegmentSpec(spec.n, spec.d, spec.t, spec.u, min_monomial(spec.n, spec.d, spec.t),
                                        SegmentKind.FINAL))


def slex_successor(w: SquarefreeMonomial, t: int) -> SquarefreeMonomial | None:
    """The next monomial below w in M_{n,d,t}, or None when w is the minimum."""
    monomials = enumerate_M(w.ambient, w.degree, t)
    k = monomials.index(w)
    return monomials[k + 1] if k + 1 < len(monomials) else None


def slex_predecessor(w: SquarefreeMonomial, t: int) -> SquarefreeMonomial | None:
    monomials = enumerate_M(w.ambient, w.degree, t)
    k = monomials.index(w)
    return monomials[k - 1] if k > 0 else None


# -----------------------------------------------------------
#                COMPLETELY AND LINEAR-RESOLUTION CRITERIA
# -----------------------------------------------------------

def is_completely_by_intersection(spec: LexsegmentSpec) -> bool:
    return initial_extension(spec).intersect(final_extension(spec)) == build_segment(spec)


def is_completely(spec: LexsegmentSpec) -> bool:
    """
    Whether (L_t(u, v)) = J ∩ T.

    When min(u) = 1 < min(v) every w <slex v must admit an s > 1 in supp(w)
    with x_1 w / x_s <=lex u. Outside that shape the exchange test does not
    decide the question (J is taken in the full ring), so the intersection is
    compared directly.
    """
    if spec.effective_kind != SegmentKind.ARBITRARY:
        return True
    i1 = spec.u.min_index
    if i1 != 1 or spec.v.min_index == 1:
        return is_completely_by_intersection(spec)

    u_idx = spec.u.support
    monomials = enumerate_M(spec.n, spec.d, spec.t)
    below = monomials[monomials.index(spec.v) + 1:]
    for w in below:
        support = w.support
        ok = False
        for s in support:
            if s <= i1:
                continue
            exchanged = sorted([i1] + [x for x in support if x != s])
            if lex_compare(exchanged, u_idx) != Ordering.GREATER:
                ok = True
                break
        if not ok:
            logger.debug("%s not completely: no exchange for w=%s", spec.describe(), w)
            return False
    return True


class LinearResolutionVerdict(str, Enum):
    LINEAR = "linear"
    NOT_LINEAR = "not-linear"
    INAPPLICABLE = "criterion inapplicable"


def has_linear_resolution_completely(spec: LexsegmentSpec) -> bool:
    """
    Linear-resolution test for a completely segment with min(v) > min(u) = 1.

    Raises PreconditionError when the hypotheses fail; see
    linear_resolution_verdict for a non-raising variant.
    """
    if spec.u.min_index != 1 or spec.v.min_index <= 1:
        raise PreconditionError(f"linear-resolution criterion needs min(v) > min(u) = 1, got {spec.describe()}")
    if not is_completely(spec):
        raise PreconditionError(f"linear-resolution criterion needs a completely segment, got {spec.describe()}")
    if spec.d == 1:
        return True

    u_idx = spec.u.support
    i2 = u_idx[1]
    if i2 == 1 + spec.t:
        return True
    w = slex_successor(spec.v, spec.t)
    if w is None:
        return True
    lhs = [1] + list(w.support[:-1])
    rhs = [1] + [i - spec.t for i in u_idx[1:]]
    return lex_compare(lhs, rhs) != Ordering.GREATER


def linear_resolution_verdict(spec: LexsegmentSpec) -> LinearResolutionVerdict:
    try:
        linear = has_linear_resolution_completely(spec)
    except PreconditionError as e:
        logger.debug("linear resolution: %s", e.reason)
        return LinearResolutionVerdict.INAPPLICABLE
    return LinearResolutionVerdict.LINEAR if linear else LinearResolutionVerdict.NOT_LINEAR


# -----------------------------------------------------------
#                NORMALIZATION
# -----------------------------------------------------------

class StepKind(str, Enum):
    PRINCIPAL = "principal-ideal"
    DEGREE_ONE_INTERVAL = "degree-one-interval"
    STRIP_LEADING = "strip-leading-x1-factor"
    RESTRICT_AMBIENT = "restrict-ambient"


@dataclass(frozen=True)
class NormalizationStep:
    kind: StepKind
    detail: str


@dataclass(frozen=True)
class NormalizationTrace:
    """
    How a spec was reduced. Every step shifts all surviving indices by the
    same amount, so residual index i is original index i + offset. Stripped
    variables are recorded in original coordinates.
    """

    original: LexsegmentSpec
    steps: tuple[NormalizationStep, ...]
    residual: LexsegmentSpec
    offset: int
    factored: tuple[int, ...]
    terminal: tuple[IndexSet, ...] | None = None

    @property
    def is_terminal(self) -> bool:
        return self.terminal is not None

    @property
    def terminal_kind(self) -> StepKind | None:
        if not self.is_terminal:
            return None
        return self.steps[-1].kind

    @property
    def has_strip(self) -> bool:
        return bool(self.factored)

    @property
    def shared_factor(self) -> SquarefreeMonomial:
        return SquarefreeMonomial.from_indices(self.factored, self.original.n)

    def lift_index(self, i: int) -> int:
        return i + self.offset

    def lift_set(self, indices: Iterable[int]) -> IndexSet:
        return frozenset(i + self.offset for i in indices)

    def lift_monomial(self, m: SquarefreeMonomial) -> SquarefreeMonomial:
        return m.shifted(self.offset, self.original.n)

    def reconstruct(self, residual_primes: Iterable[IndexSet]) -> list[IndexSet]:
        """Residual prime supports back in original coordinates, plus the split-off variables."""
        lifted = [self.lift_set(p) for p in residual_primes]
        return lifted + [frozenset({f}) for f in self.factored]

    def describe(self) -> list[str]:
        lines = [f"{s.kind.value}: {s.detail}" for s in self.steps]
        if not self.is_terminal:
            lines.append(f"residual: {self.residual.describe()}")
        return lines


def normalize(spec: LexsegmentSpec) -> NormalizationTrace:
    n, d, t = spec.n, spec.d, spec.t
    u, v = spec.u, spec.v
    offset = 0
    factored: list[int] = []
    steps: list[NormalizationStep] = []

    while True:
        current = LexsegmentSpec.from_endpoints(n, d, t, u, v)

        if u == v:
            steps.append(NormalizationStep(StepKind.PRINCIPAL, f"{u} is the only generator"))
            primes = tuple(frozenset({i}) for i in u.support)
            return NormalizationTrace(spec, tuple(steps), current, offset, tuple(factored), primes)

        if d == 1:
            a, b = u.min_index, v.min_index
            steps.append(NormalizationStep(StepKind.DEGREE_ONE_INTERVAL, f"variables x{a}..x{b}"))
            primes = (frozenset(range(a, b + 1)),)
            return NormalizationTrace(spec, tuple(steps), current, offset, tuple(factored), primes)

        if v.min_index == 1:
            # every generator is divisible by x1
            factored.append(1 + offset)
            steps.append(NormalizationStep(StepKind.STRIP_LEADING, f"split off (x{1 + offset}), shift by {t}"))
            n, d = n - t, d - 1
            u = u.without(1).shifted(-t, n)
            v = v.without(1).shifted(-t, n)
            offset += t
            continue

        if u.min_index > 1:
            s = u.min_index - 1
            steps.append(NormalizationStep(StepKind.RESTRICT_AMBIENT,
                                           f"drop x{1 + offset}..x{s + offset}, shift by {s}"))
            n = n - s
            u = u.shifted(-s, n)
            v = v.shifted(-s, n)
            offset += s
            continue

        return NormalizationTrace(spec, tuple(steps), current, offset, tuple(factored))
