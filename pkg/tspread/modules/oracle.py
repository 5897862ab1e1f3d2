"""
Brute-force ground truth for squarefree monomial ideals.

The Stanley-Reisner complex is found by scanning all 2^n subsets with numpy.
Reduced homology is exact over QQ (sympy DomainMatrix ranks). Betti numbers
come from Hochster's formula and Cohen-Macaulayness from Reisner's criterion.
Nothing here uses the closed forms, so the two paths check each other.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from tspread.config import settings
from tspread.errors import InternalInconsistency, OracleCapExceeded
from tspread.modules.lexseg_model import MonomialIdeal
from tspread.modules.monomial_core import IndexSet, indices_of
from tspread.modules.primary_decomp import PrimeDecomposition, ProvenanceTag, finalize

logger = logging.getLogger(__name__)


def _check_cap(n: int, cap: int, what: str):
    if n > cap:
        raise OracleCapExceeded(n, cap, what)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks) -> tuple[int, ...]:
    ordered = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


# -----------------------------------------------------------
#                SIMPLICIAL COMPLEX
# -----------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """
    Complex on [n] given by its facets (bitmasks, antichain). Vertices whose
    variable lies in the ideal are not faces; they are kept in `excluded`.
    """

    ambient: int
    facets: tuple[int, ...]
    excluded: int = 0

    @property
    def facet_sets(self) -> list[IndexSet]:
        return [frozenset(indices_of(f)) for f in self.facets]

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) == 1

    def faces(self) -> set[int]:
        out: set[int] = set()
        for f in self.facets:
            out.update(_submasks(f))
        return out

    def link(self, face: int) -> "SimplicialComplex":
        return SimplicialComplex(self.ambient, _maximal(f & ~face for f in self.facets if f & face == face))

    def induced(self, vertices: int) -> "SimplicialComplex":
        return SimplicialComplex(self.ambient, _maximal(f & vertices for f in self.facets))

    def is_cone(self) -> bool:
        common = -1
        for f in self.facets:
            common &= f
        return common > 0


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers over QQ, keyed by dimension (nonzero only)."""

    ranks: tuple[tuple[int, int], ...]

    def rank(self, i: int) -> int:
        return dict(self.ranks).get(i, 0)

    @property
    def is_acyclic(self) -> bool:
        return not self.ranks


@dataclass(frozen=True)
class ReisnerResult:
    is_cm: bool
    is_pure: bool


# -----------------------------------------------------------
#                STANLEY-REISNER
# -----------------------------------------------------------

def _nonface_table(ideal: MonomialIdeal) -> tuple[np.ndarray, np.ndarray]:
    n = ideal.ambient
    masks = np.arange(1 << n, dtype=np.int64)
    nonface = np.zeros(1 << n, dtype=bool)
    for g in ideal.masks:
        nonface |= (masks & g) == g
    return masks, nonface


def stanley_reisner(ideal: MonomialIdeal) -> SimplicialComplex:
    n = ideal.ambient
    _check_cap(n, settings.ORACLE_CAP, "facet scan")
    masks, nonface = _nonface_table(ideal)
    if nonface[0]:
        raise InternalInconsistency("the unit ideal has no Stanley-Reisner complex")

    is_facet = ~nonface
    for b in range(n):
        bit = 1 << b
        has = (masks & bit) != 0
        is_facet &= has | nonface[masks | bit]
    facets = tuple(int(m) for m in np.nonzero(is_facet)[0])

    excluded = 0
    for g in ideal.masks:
        if g.bit_count() == 1:
            excluded |= g
    return SimplicialComplex(n, facets, excluded)


def ideal_of_nonfaces(complex_: SimplicialComplex) -> MonomialIdeal:
    """Minimal non-faces, i.e. the generators of I_Δ."""
    n = complex_.ambient
    _check_cap(n, settings.ORACLE_CAP, "non-face scan")
    masks = np.arange(1 << n, dtype=np.int64)
    face = np.zeros(1 << n, dtype=bool)
    for f in complex_.faces():
        face[f] = True
    minimal = ~face
    for b in range(n):
        bit = 1 << b
        has = (masks & bit) != 0
        minimal &= ~has | face[masks & ~bit]
    return MonomialIdeal.from_masks(n, (int(m) for m in np.nonzero(minimal)[0]))


def minimal_primes_bruteforce(ideal: MonomialIdeal) -> PrimeDecomposition:
    delta = stanley_reisner(ideal)
    full = frozenset(range(1, ideal.ambient + 1))
    return finalize(ideal.ambient, [(full - F, ProvenanceTag.ORACLE) for F in delta.facet_sets])


def krull_dim_oracle(ideal: MonomialIdeal) -> int:
    """dim S/I = dim Δ + 1, the largest facet size."""
    delta = stanley_reisner(ideal)
    return max(f.bit_count() for f in delta.facets)


# -----------------------------------------------------------
#                REDUCED HOMOLOGY OVER QQ
# -----------------------------------------------------------

def _rank_qq(dense: np.ndarray) -> int:
    rows, cols = dense.shape
    if rows == 0 or cols == 0:
        return 0
    entries = [[ZZ(int(x)) for x in row] for row in dense.tolist()]
    return DomainMatrix(entries, (rows, cols), ZZ).convert_to(QQ).rank()


def _canonical_key(facets: tuple[int, ...]) -> tuple[int, ...]:
    # relabel the vertices in use as 0..k-1, keeping their order
    used = 0
    for f in facets:
        used |= f
    positions = {b: k for k, b in enumerate(i - 1 for i in indices_of(used))}
    relabelled = []
    for f in facets:
        m = 0
        for i in indices_of(f):
            m |= 1 << positions[i - 1]
        relabelled.append(m)
    return tuple(sorted(relabelled))


@lru_cache(maxsize=200_000)
def _homology_of(facets: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    faces: set[int] = set()
    for f in facets:
        faces.update(_submasks(f))
    by_size: dict[int, list[int]] = {}
    for f in faces:
        by_size.setdefault(f.bit_count(), []).append(f)
    for group in by_size.values():
        group.sort()
    top = max(by_size)

    # rank of the boundary map from faces of size k to faces of size k - 1
    boundary_rank = {}
    for k in range(1, top + 1):
        upper = by_size.get(k, [])
        lower = by_size.get(k - 1, [])
        row_of = {m: r for r, m in enumerate(lower)}
        dense = np.zeros((len(lower), len(upper)), dtype=np.int64)
        for c, f in enumerate(upper):
            for pos, i in enumerate(indices_of(f)):
                dense[row_of[f & ~(1 << (i - 1))], c] = -1 if pos % 2 else 1
        boundary_rank[k] = _rank_qq(dense)

    ranks = []
    for k in range(0, top + 1):
        b = len(by_size.get(k, [])) - boundary_rank.get(k, 0) - boundary_rank.get(k + 1, 0)
        if b < 0:
            raise InternalInconsistency(f"negative Betti number in dimension {k - 1}")
        if b:
            ranks.append((k - 1, b))
    return tuple(ranks)


def reduced_homology(complex_: SimplicialComplex) -> HomologyProfile:
    _check_cap(complex_.ambient, settings.ORACLE_CAP, "homology")
    if complex_.is_cone():
        return HomologyProfile(())
    return HomologyProfile(_homology_of(_canonical_key(complex_.facets)))


# -----------------------------------------------------------
#                HOCHSTER AND REISNER
# -----------------------------------------------------------

def hochster_betti(ideal: MonomialIdeal):
    """β_{i,j}(I) = sum over |W| = j of dim H~_{j-i-2}(Δ_W; QQ)."""
    from tspread.modules.homological import BettiTable

    n = ideal.ambient
    _check_cap(n, settings.HOCHSTER_CAP, "Hochster table")
    if ideal.is_zero:
        return BettiTable({})
    delta = stanley_reisner(ideal)
    faces = delta.faces()

    entries: dict[tuple[int, int], int] = {}
    for j in range(1, n + 1):
        for W in combinations(range(n), j):
            w_mask = sum(1 << b for b in W)
            if w_mask in faces:
                continue
            profile = reduced_homology(delta.induced(w_mask))
            for k, b in profile.ranks:
                i = j - k - 2
                if i >= 0:
                    entries[(i, j)] = entries.get((i, j), 0) + b

    table = BettiTable(entries)
    for j in {g.degree for g in ideal.generators} | {j for (i, j) in entries if i == 0}:
        if table.beta(0, j) != len(ideal.generators_in_degree(j)):
            raise InternalInconsistency(
                f"Hochster self-check: beta_0,{j} = {table.beta(0, j)} but G(I) has "
                f"{len(ideal.generators_in_degree(j))} generators of degree {j}")
    return table


def depth_oracle(ideal: MonomialIdeal) -> int:
    """depth S/I = n - pd S/I, with pd read off the Hochster table."""
    if ideal.is_zero:
        return ideal.ambient
    return ideal.ambient - (hochster_betti(ideal).projective_dimension + 1)


def reisner_cm_check(ideal: MonomialIdeal) -> ReisnerResult:
    """
    Cohen-Macaulay over QQ iff every link (including that of the empty face)
    has vanishing reduced homology below its top dimension.
    """
    delta = stanley_reisner(ideal)
    if not delta.is_pure:
        return ReisnerResult(False, False)
    for face in sorted(delta.faces()):
        lk = delta.link(face)
        top = lk.dimension
        profile = reduced_homology(lk)
        if any(k < top for k, _ in profile.ranks):
            logger.debug("Reisner: link of %s has homology %s", indices_of(face), profile.ranks)
            return ReisnerResult(False, True)
    return ReisnerResult(True, True)
