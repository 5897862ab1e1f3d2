"""
Squarefree and t-spread monomial arithmetic.

A squarefree monomial x_A over the ambient ring K[x_1, ..., x_n] is stored as
a bitmask: index i lives in bit i - 1, so every subset of [n] is an integer in
[0, 2^n). The constant monomial 1 is the empty mask.
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from tspread.config import settings
from tspread.errors import ContractViolation, OutOfRange

logger = logging.getLogger(__name__)

IndexSet = frozenset[int]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# -----------------------------------------------------------
#                BITMASK HELPERS
# -----------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def interval(a: int, b: int) -> IndexSet:
    """[a, b] as an index set (empty when a > b)."""
    return frozenset(range(a, b + 1))


# -----------------------------------------------------------
#                SQUAREFREE MONOMIAL
# -----------------------------------------------------------

@dataclass(frozen=True, order=False)
class SquarefreeMonomial:
    mask: int
    ambient: int

    def __post_init__(self):
        if self.ambient < 1:
            raise ContractViolation(f"ambient must be positive, got {self.ambient}")
        if self.ambient > settings.FORMULA_CAP:
            raise OutOfRange(f"ambient {self.ambient} exceeds formula cap {settings.FORMULA_CAP}")
        if self.mask < 0 or self.mask >> self.ambient:
            raise ContractViolation(f"support {indices_of(max(self.mask, 0))} not inside [1, {self.ambient}]")

    @classmethod
    def from_indices(cls, indices: Iterable[int], ambient: int) -> "SquarefreeMonomial":
        idx = list(indices)
        if len(set(idx)) != len(idx):
            raise ContractViolation(f"repeated index in {idx}: not squarefree")
        for i in idx:
            if i < 1 or i > ambient:
                raise ContractViolation(f"index {i} not inside [1, {ambient}]")
        return cls(mask_of(idx), ambient)

    @classmethod
    def one(cls, ambient: int) -> "SquarefreeMonomial":
        return cls(0, ambient)

    @property
    def support(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def min_index(self) -> int:
        if not self.mask:
            raise ContractViolation("min of the monomial 1 is undefined")
        return (self.mask & -self.mask).bit_length()

    @property
    def max_index(self) -> int:
        if not self.mask:
            raise ContractViolation("max of the monomial 1 is undefined")
        return self.mask.bit_length()

    def divides(self, other: "SquarefreeMonomial") -> bool:
        return self.mask & other.mask == self.mask

    def without(self, index: int) -> "SquarefreeMonomial":
        """w / x_index; the variable must divide w."""
        bit = 1 << (index - 1)
        if not self.mask & bit:
            raise ContractViolation(f"x{index} does not divide {self}")
        return SquarefreeMonomial(self.mask & ~bit, self.ambient)

    def times(self, index: int) -> "SquarefreeMonomial":
        bit = 1 << (index - 1)
        if self.mask & bit:
            raise ContractViolation(f"x{index} already divides {self}")
        return SquarefreeMonomial.from_indices(self.support + (index,), self.ambient)

    def lcm(self, other: "SquarefreeMonomial") -> "SquarefreeMonomial":
        return SquarefreeMonomial(self.mask | other.mask, max(self.ambient, other.ambient))

    def shifted(self, delta: int, ambient: int) -> "SquarefreeMonomial":
        """Relabel x_i as x_{i+delta} inside a new ambient ring."""
        return SquarefreeMonomial.from_indices((i + delta for i in self.support), ambient)

    def reflected(self) -> "SquarefreeMonomial":
        n = self.ambient
        return SquarefreeMonomial.from_indices((n + 1 - i for i in self.support), n)

    def to_json(self) -> list[int]:
        return list(self.support)

    def __str__(self) -> str:
        if not self.mask:
            return "1"
        return "*".join(f"x{i}" for i in self.support)

    def __repr__(self) -> str:
        return f"SquarefreeMonomial({self}, n={self.ambient})"


# -----------------------------------------------------------
#                ORDERS
# -----------------------------------------------------------

def is_t_spread(m: SquarefreeMonomial, t: int) -> bool:
    s = m.support
    return all(b - a >= t for a, b in zip(s, s[1:]))


def _compare_sorted(a: Sequence[int], b: Sequence[int]) -> Ordering:
    # For equal-degree monomials written as sorted index lists, the first
    # smaller index wins under both squarefree lex and plain lex.
    for x, y in zip(a, b):
        if x != y:
            return Ordering.GREATER if x < y else Ordering.LESS
    return Ordering.EQUAL


def slex_compare(u: SquarefreeMonomial, v: SquarefreeMonomial) -> Ordering:
    if u.degree != v.degree:
        raise ContractViolation(f"slex compares equal degrees only: deg {u} = {u.degree}, deg {v} = {v.degree}")
    if u.ambient != v.ambient:
        raise ContractViolation(f"ambient mismatch: {u.ambient} vs {v.ambient}")
    return _compare_sorted(u.support, v.support)


def lex_compare(a: Sequence[int], b: Sequence[int]) -> Ordering:
    """
    Lexicographic comparison of two equal-degree monomials given as sorted
    index lists. Repeated indices are allowed (x1*x1*x4 is [1, 1, 4]).
    """
    if len(a) != len(b):
        raise ContractViolation(f"lex compares equal degrees only: {list(a)} vs {list(b)}")
    if any(x > y for x, y in zip(a, a[1:])) or any(x > y for x, y in zip(b, b[1:])):
        raise ContractViolation("lex_compare expects sorted index lists")
    return _compare_sorted(a, b)


# -----------------------------------------------------------
#                T-SPREAD SUPPORT AND COSUPPORT
# -----------------------------------------------------------

def supp_t(w: SquarefreeMonomial, t: int, n: int | None = None) -> IndexSet:
    """Union of the forward intervals [l, l + t - 1] over the support of w."""
    n = w.ambient if n is None else n
    if not w.mask:
        return frozenset()
    if w.max_index + t - 1 > n:
        raise OutOfRange(f"supp_{t}({w}) leaves [1, {n}]: need max <= {n + 1 - t}")
    out: set[int] = set()
    for l in w.support:
        out.update(range(l, l + t))
    return frozenset(out)


def cosupp_t(w: SquarefreeMonomial, t: int) -> IndexSet:
    """Union of the backward intervals [l - t + 1, l] over the support of w."""
    if not w.mask:
        return frozenset()
    if w.min_index < t:
        raise OutOfRange(f"cosupp_{t}({w}) leaves [1, n]: need min >= {t}")
    out: set[int] = set()
    for l in w.support:
        out.update(range(l - t + 1, l + 1))
    return frozenset(out)


# -----------------------------------------------------------
#                ENUMERATION OF M_{n,d,t}
# -----------------------------------------------------------

def count_M(n: int, d: int, t: int) -> int:
    if d == 0:
        return 1
    if n < 1 + (d - 1) * t:
        return 0
    return comb(n - (t - 1) * (d - 1), d)


def enumerate_M(n: int, d: int, t: int) -> list[SquarefreeMonomial]:
    """
    All t-spread monomials of degree d in n variables, slex-descending.

    Gap-adjusted indices c_k = i_k - (k - 1)(t - 1) run over the d-subsets of
    [n - (d - 1)(t - 1)], and itertools emits those in exactly the order we
    need.
    """
    if t < 1:
        raise ContractViolation(f"t must be positive, got {t}")
    if d < 0:
        raise ContractViolation(f"degree must be nonnegative, got {d}")
    if d == 0:
        return [SquarefreeMonomial.one(n)]
    if n < 1 + (d - 1) * t:
        return []
    top = n - (d - 1) * (t - 1)
    out = []
    for c in combinations(range(1, top + 1), d):
        out.append(SquarefreeMonomial(mask_of(ck + k * (t - 1) for k, ck in enumerate(c)), n))
    return out


def max_monomial(n: int, d: int, t: int) -> SquarefreeMonomial:
    """x_1 x_{1+t} ... x_{1+(d-1)t}"""
    return SquarefreeMonomial.from_indices((1 + s * t for s in range(d)), n)


def min_monomial(n: int, d: int, t: int) -> SquarefreeMonomial:
    """x_{n-(d-1)t} ... x_{n-t} x_n"""
    return SquarefreeMonomial.from_indices((n - s * t for s in reversed(range(d))), n)
