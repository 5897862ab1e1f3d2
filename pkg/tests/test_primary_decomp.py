import pytest
from hypothesis import given, settings

from conftest import lexsegment_specs
from tspread.errors import InternalInconsistency, PreconditionError
from tspread.modules.lexseg_model import LexsegmentSpec, SegmentKind, build_segment, is_completely
from tspread.modules.monomial_core import SquarefreeMonomial
from tspread.modules.oracle import minimal_primes_bruteforce
from tspread.modules.primary_decomp import (
    I_OVERRIDE_NOTE,
    OPEN_QUESTION_NOTE,
    ProvenanceTag,
    closed_form_available,
    decompose,
    decompose_completely,
    decompose_final,
    decompose_initial,
    decompose_veronese,
    facet_sizes,
    finalize,
)
from tspread.modules.processor import iter_specs


def mono(indices, n):
    return SquarefreeMonomial.from_indices(indices, n)


class TestWorkedExamples:
    def test_initial(self):
        found = decompose_initial(mono([2, 5, 7], 7), 7, 3, 2)
        assert found.supports == [(1, 2), (1, 4, 5), (1, 4, 7), (1, 6, 7),
                                  (3, 4, 5), (3, 4, 7), (3, 6, 7), (5, 6, 7)]
        assert found.provenance[0] == ProvenanceTag.F_P
        assert not found.is_unmixed
        assert min(facet_sizes(found)) >= 4

    def test_final(self):
        found = decompose_final(mono([1, 4, 6], 7), 7, 3, 2)
        assert found.supports == [(4, 5), (4, 7), (6, 7), (1, 2, 3), (1, 2, 5), (1, 2, 7)]
        assert set(facet_sizes(found)) <= {4, 5}
        assert found.notes["G"] + found.notes["H"] == 6
        assert found.notes["H1"] == 0

    def test_completely(self):
        found = decompose_completely(mono([1, 4, 6], 7), mono([2, 5, 7], 7), 7, 3, 2)
        assert found.supports == [(1, 2), (4, 5), (4, 7), (6, 7)]
        assert found.notes["I"] == [1]
        assert found.notes["F~"] == []
        assert found.is_unmixed

    def test_veronese(self):
        found = decompose_veronese(5, 2, 2)
        assert found.supports == [(1, 2, 3), (1, 2, 5), (1, 4, 5), (3, 4, 5)]
        assert set(found.provenance) == {ProvenanceTag.VERONESE}

    def test_veronese_degree_one(self):
        assert decompose_veronese(4, 1, 1).supports == [(1, 2, 3, 4)]


class TestPreconditions:
    def test_initial_needs_min_v_two(self):
        with pytest.raises(PreconditionError):
            decompose_initial(mono([1, 5, 7], 7), 7, 3, 2)

    def test_final_needs_min_u_one(self):
        with pytest.raises(PreconditionError):
            decompose_final(mono([2, 4, 6], 7), 7, 3, 2)

    def test_completely_refuses_non_completely(self):
        with pytest.raises(PreconditionError):
            decompose_completely(mono([1, 8], 8), mono([2, 4], 8), 8, 2, 2)

    def test_finalize_refuses_containment(self):
        with pytest.raises(InternalInconsistency):
            finalize(4, [(frozenset({1, 2}), ProvenanceTag.F), (frozenset({1, 2, 3}), ProvenanceTag.F)])


class TestDispatch:
    def test_non_completely_falls_back(self):
        spec = LexsegmentSpec.arbitrary(8, 2, 2, [1, 8], [2, 4])
        assert not closed_form_available(spec)
        found = decompose(spec)
        assert found.notes["note"] == OPEN_QUESTION_NOTE
        assert set(found.provenance) == {ProvenanceTag.ORACLE}
        assert found.supports == [(1, 2), (1, 4), (2, 8), (4, 8)]

    def test_shared_variable_gets_a_singleton(self, shared_x1_7_3_2):
        found = decompose(shared_x1_7_3_2)
        assert found.supports[0] == (1,)
        assert found.provenance[0] == ProvenanceTag.SPLIT_VARIABLE
        assert found.supports == [(1,), (3, 4), (3, 6), (6, 7)]
        assert "trace" in found.notes

    def test_principal(self):
        found = decompose(LexsegmentSpec.arbitrary(5, 2, 1, [2, 4], [2, 4]))
        assert found.supports == [(2,), (4,)]

    def test_interval(self):
        found = decompose(LexsegmentSpec.arbitrary(6, 1, 1, [2], [4]))
        assert found.supports == [(2, 3, 4)]
        assert found.provenance == (ProvenanceTag.INTERVAL,)

    def test_worked_examples_through_dispatch(self, initial_7_3_2, final_7_3_2, completely_7_3_2):
        assert len(decompose(initial_7_3_2).primes) == 8
        assert len(decompose(final_7_3_2).primes) == 6
        assert len(decompose(completely_7_3_2).primes) == 4

    @settings(max_examples=60, deadline=None)
    @given(spec=lexsegment_specs(max_n=7))
    def test_matches_oracle(self, spec):
        found = decompose(spec)
        truth = minimal_primes_bruteforce(build_segment(spec))
        assert found.supports == truth.supports


class TestFinalFacetsThroughVertexOne:
    @pytest.mark.parametrize("n, d, t, u, expected", [
        (6, 3, 2, [1, 3, 6], [(6,), (1, 2), (1, 4), (3, 4)]),
        (4, 3, 1, [1, 2, 4], [(4,), (1, 2), (1, 3), (2, 3)]),
    ])
    def test_second_index_next_to_one(self, n, d, t, u, expected):
        found = decompose_final(mono(u, n), n, d, t)
        assert found.supports == expected
        assert found.notes["H1"] == 1
        assert ProvenanceTag.H_LEADING in found.provenance
        truth = minimal_primes_bruteforce(build_segment(LexsegmentSpec.final(n, d, t, u)))
        assert found.supports == truth.supports

    def test_every_small_final_segment(self):
        for spec in iter_specs(range(3, 8), (2, 3), (1, 2, 3), [SegmentKind.FINAL]):
            truth = minimal_primes_bruteforce(build_segment(spec))
            assert decompose(spec).supports == truth.supports, spec.describe()


class TestMembershipCondition:
    def test_disagreement_is_noted(self):
        spec = LexsegmentSpec.arbitrary(6, 2, 2, [1, 4], [3, 6])
        found = decompose(spec)
        assert (1, 2, 5, 6) in found.supports
        assert found.notes[I_OVERRIDE_NOTE] == [
            {"p": 2, "prime": [1, 2, 5, 6], "containment": "keep", "condition": "drop"}]
        assert found.supports == minimal_primes_bruteforce(build_segment(spec)).supports

    def test_worked_example_has_no_overrides(self, completely_7_3_2):
        assert I_OVERRIDE_NOTE not in decompose(completely_7_3_2).notes


@pytest.mark.slow
def test_exhaustive_closed_forms_against_oracle():
    for spec in iter_specs(range(3, 10), (2, 3), (1, 2, 3)):
        if spec.kind == SegmentKind.ARBITRARY and not is_completely(spec):
            continue
        truth = minimal_primes_bruteforce(build_segment(spec))
        assert decompose(spec).supports == truth.supports, spec.describe()
