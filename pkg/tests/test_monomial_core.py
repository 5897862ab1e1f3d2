from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from tspread.errors import ContractViolation, OutOfRange
from tspread.modules.monomial_core import (
    Ordering,
    SquarefreeMonomial,
    cosupp_t,
    count_M,
    enumerate_M,
    is_t_spread,
    lex_compare,
    max_monomial,
    min_monomial,
    slex_compare,
    supp_t,
)


def mono(indices, n):
    return SquarefreeMonomial.from_indices(indices, n)


class TestSquarefreeMonomial:
    def test_bitmask_layout(self):
        m = mono([1, 3, 5], 6)
        assert m.mask == 0b10101
        assert m.support == (1, 3, 5)
        assert m.degree == 3
        assert (m.min_index, m.max_index) == (1, 5)
        assert str(m) == "x1*x3*x5"

    def test_one(self):
        one = SquarefreeMonomial.one(4)
        assert one.degree == 0
        assert str(one) == "1"
        with pytest.raises(ContractViolation):
            one.min_index

    @pytest.mark.parametrize("indices", [[0, 2], [2, 7], [3, 3]])
    def test_rejects_bad_indices(self, indices):
        with pytest.raises(ContractViolation):
            mono(indices, 6)

    def test_without_times_shift(self):
        m = mono([1, 4, 6], 7)
        assert m.without(1) == mono([4, 6], 7)
        assert m.without(1).times(2) == mono([2, 4, 6], 7)
        assert m.without(1).shifted(-2, 5) == mono([2, 4], 5)
        with pytest.raises(ContractViolation):
            m.without(2)

    def test_formula_cap(self, monkeypatch):
        from tspread.config import settings as cfg

        monkeypatch.setattr(cfg, "FORMULA_CAP", 8)
        with pytest.raises(OutOfRange):
            SquarefreeMonomial.one(9)


class TestOrders:
    def test_slex_first_smaller_index_wins(self):
        assert slex_compare(mono([1, 4, 6], 7), mono([2, 5, 7], 7)) == Ordering.GREATER
        assert slex_compare(mono([2, 5, 7], 7), mono([2, 4, 7], 7)) == Ordering.LESS
        assert slex_compare(mono([3, 5], 7), mono([3, 5], 7)) == Ordering.EQUAL

    def test_slex_contract(self):
        with pytest.raises(ContractViolation):
            slex_compare(mono([1, 3], 5), mono([1, 3, 5], 5))
        with pytest.raises(ContractViolation):
            slex_compare(mono([1, 3], 5), mono([1, 3], 6))

    def test_lex_allows_repeats(self):
        assert lex_compare([1, 1, 4], [1, 2, 3]) == Ordering.GREATER
        assert lex_compare([1, 3, 5], [1, 2, 4]) == Ordering.LESS
        assert lex_compare([1, 2], [1, 2]) == Ordering.EQUAL
        with pytest.raises(ContractViolation):
            lex_compare([1, 2], [1, 2, 3])


class TestSupports:
    def test_supp_t(self):
        assert supp_t(mono([2, 5, 10], 13), 3) == {2, 3, 4, 5, 6, 7, 10, 11, 12}
        assert supp_t(mono([1, 3], 7), 2) == {1, 2, 3, 4}

    def test_cosupp_t(self):
        assert cosupp_t(mono([5, 10, 13], 13), 3) == {3, 4, 5, 8, 9, 10, 11, 12, 13}
        assert cosupp_t(mono([4, 6], 7), 2) == {3, 4, 5, 6}

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            supp_t(mono([2, 5, 10], 11), 3)
        with pytest.raises(OutOfRange):
            cosupp_t(mono([2, 5], 7), 3)

    def test_empty_monomial(self):
        assert supp_t(SquarefreeMonomial.one(5), 2) == frozenset()
        assert cosupp_t(SquarefreeMonomial.one(5), 2) == frozenset()


class TestEnumeration:
    def test_six_two_two(self):
        got = [m.support for m in enumerate_M(6, 2, 2)]
        assert got == [(1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)]

    def test_nine_three_two_count(self):
        assert len(enumerate_M(9, 3, 2)) == 35

    def test_degenerate(self):
        assert enumerate_M(4, 3, 2) == []
        assert enumerate_M(4, 0, 2) == [SquarefreeMonomial.one(4)]

    def test_extremes(self):
        assert max_monomial(7, 3, 2) == mono([1, 3, 5], 7)
        assert min_monomial(7, 3, 2) == mono([3, 5, 7], 7)
        ms = enumerate_M(7, 3, 2)
        assert ms[0] == max_monomial(7, 3, 2)
        assert ms[-1] == min_monomial(7, 3, 2)

    @settings(max_examples=80, deadline=None)
    @given(n=st.integers(1, 14), d=st.integers(1, 5), t=st.integers(1, 4))
    def test_count_and_order(self, n, d, t):
        ms = enumerate_M(n, d, t)
        assert len(ms) == count_M(n, d, t)
        if n >= 1 + (d - 1) * t:
            assert len(ms) == comb(n - (t - 1) * (d - 1), d)
        assert all(is_t_spread(m, t) and m.degree == d for m in ms)
        assert all(slex_compare(a, b) == Ordering.GREATER for a, b in zip(ms, ms[1:]))


@pytest.mark.slow
def test_count_identity_full_range():
    for n in range(1, 21):
        for d in range(1, 7):
            for t in range(1, 5):
                if n < 1 + (d - 1) * t:
                    continue
                assert len(enumerate_M(n, d, t)) == comb(n - (t - 1) * (d - 1), d)
