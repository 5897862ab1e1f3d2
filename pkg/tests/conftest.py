import pytest
from hypothesis import strategies as st

from tspread.modules.lexseg_model import LexsegmentSpec
from tspread.modules.monomial_core import enumerate_M


@pytest.fixture
def initial_7_3_2() -> LexsegmentSpec:
    """J = (L_2(x1x3x5, x2x5x7)) in K[x1..x7]."""
    return LexsegmentSpec.initial(7, 3, 2, [2, 5, 7])


@pytest.fixture
def final_7_3_2() -> LexsegmentSpec:
    """T = (L_2(x1x4x6, x3x5x7))."""
    return LexsegmentSpec.final(7, 3, 2, [1, 4, 6])


@pytest.fixture
def completely_7_3_2() -> LexsegmentSpec:
    """I = (L_2(x1x4x6, x2x5x7)) = J ∩ T."""
    return LexsegmentSpec.arbitrary(7, 3, 2, [1, 4, 6], [2, 5, 7])


@pytest.fixture
def shared_x1_7_3_2() -> LexsegmentSpec:
    """x1 * (x3x6, x3x7, x4x6): every generator carries x1."""
    return LexsegmentSpec.arbitrary(7, 3, 2, [1, 3, 6], [1, 4, 6])


@st.composite
def lexsegment_specs(draw, max_n: int = 7, max_d: int = 3, max_t: int = 3):
    t = draw(st.integers(1, max_t))
    d = draw(st.integers(1, max_d))
    low = 1 + (d - 1) * t
    if low > max_n:
        d, low = 1, 1
    n = draw(st.integers(max(low, 2), max_n))
    monomials = enumerate_M(n, d, t)
    a = draw(st.integers(0, len(monomials) - 1))
    b = draw(st.integers(a, len(monomials) - 1))
    return LexsegmentSpec.from_endpoints(n, d, t, monomials[a], monomials[b])
