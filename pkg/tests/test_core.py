import pytest
from hypothesis import given, settings, strategies as st

from overlab.core import (
    DurfeeProfile,
    FrobeniusSymbol,
    InvalidObject,
    MultiplicitySequence,
    Overpartition,
    TwoModularDiagram,
    durfee_blocks,
    durfee_dissection,
    enumerate_overpartitions,
    generalized_durfee_size,
    in_family_b,
    iter_frobenius,
    iter_overpartitions,
    iter_superpartitions,
    iter_two_modular,
    multiplicity_sequence,
    multuple_division,
    n_durfee_size,
    partitions,
    phi_inverse,
    phi_two_modular,
    sequence_length,
    successive_ranks,
)

# number of overpartitions of n
OVERPARTITION_COUNTS = [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]


def test_counts_match_known_sequence():
    assert [len(enumerate_overpartitions(n)) for n in range(11)] == OVERPARTITION_COUNTS


def test_frobenius_symbols_are_equinumerous():
    for n in range(11):
        assert sum(1 for _ in iter_frobenius(n)) == OVERPARTITION_COUNTS[n]


def test_partitions_order():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_overline_rule_rejected():
    with pytest.raises(InvalidObject):
        Overpartition(((3, True), (3, True)))
    with pytest.raises(InvalidObject):
        Overpartition(((3, True), (3, False)))  # overlined copy must come last


def test_parse_and_print():
    op = Overpartition.parse("5' 4 3 3'")
    assert str(op) == "(5' 4 3 3')"
    assert op.weight == 15 and op.overlined_count == 2
    assert Overpartition.from_parts([(3, True), (5, True), (3, False), (4, False)]) == op


def test_empty_objects():
    assert Overpartition() in enumerate_overpartitions(0)
    assert FrobeniusSymbol((), ()).weight == 0
    assert sequence_length(Overpartition()) == 0


def test_multiplicity_sequence():
    op = Overpartition.parse("6 6 5 4 4 4' 3 1'")
    ms = multiplicity_sequence(op)
    assert str(ms) == "(0 1' 0 1 3' 1 2)"
    assert ms.to_overpartition() == op


def test_multuple_division():
    tuples, N = multuple_division(MultiplicitySequence.parse("0 2' 0 2 1' 1"))
    assert [(t.start, t.length) for t in tuples] == [(0, 1), (3, 2)]
    assert N == 3


def test_frobenius_canonical_bottom():
    f = FrobeniusSymbol.parse("5 2 / 1 1'")
    assert str(f) == "(5 2 / 1' 1)"
    assert successive_ranks(f) == [3, 1]


def test_successive_ranks():
    assert successive_ranks(FrobeniusSymbol.parse("7 4 2 0 / 3' 3 1 0'")) == [2, 0, 1, 0]


def test_frobenius_rejects_bad_top():
    with pytest.raises(InvalidObject):
        FrobeniusSymbol((2, 2), ((0, False), (0, False)))


def test_durfee_sizes():
    assert generalized_durfee_size(Overpartition.parse("7' 4 3 3' 2 1'")) == 4
    assert generalized_durfee_size(Overpartition.parse("8' 7 5 5 5' 4 3 3' 1")) == 5
    assert n_durfee_size(Overpartition.parse("8 8 6' 5 5 3 3 3' 1'"), 2) == 6


def test_dissection_needs_empty_remainder():
    op = Overpartition.parse("6 5 5' 4 4 3 2 2 2' 1")
    assert durfee_dissection(op, 4, 4) is None
    assert durfee_dissection(op, 5, 5).sizes == (4, 3, 2, 1)
    sizes, rest = durfee_blocks(op, ["square"] * 3)
    assert sizes == [4, 3, 2] and rest == [1]


def test_profile_from_heights():
    assert DurfeeProfile.from_heights(5, [1, 2, 1, 4, 3, 2]).sizes == (6, 4, 2, 1)


def test_two_modular_round_trip():
    d = TwoModularDiagram.from_row_weights([9, 8, 6, 5])
    op = phi_two_modular(d)
    assert str(op) == "(5' 4 3 3')"
    assert phi_inverse(op) == d
    assert 2 * op.weight - op.overlined_count == d.weight


def test_two_modular_count():
    # partitions of 6 with distinct odd parts: 6, 51, 42, 321, 222
    assert sorted(tuple(sum(r) for r in d.rows) for d in iter_two_modular(6)) == [
        (2, 2, 2), (3, 2, 1), (4, 2), (5, 1), (6,)]


def test_superpartitions_double_the_count():
    for n in range(8):
        assert sum(1 for _ in iter_superpartitions(n)) == 2 * OVERPARTITION_COUNTS[n]


def test_family_b_ones_bound():
    op = Overpartition.parse("1 1'")
    assert in_family_b(op, 3, 3) and not in_family_b(op, 3, 2)


overpartitions = st.integers(0, 14).flatmap(lambda n: st.sampled_from(enumerate_overpartitions(n)))


@settings(max_examples=200, deadline=None)
@given(overpartitions)
def test_text_and_json_round_trip(op):
    assert Overpartition.parse(str(op)[1:-1]) == op
    assert Overpartition.from_json(op.to_json()) == op


@settings(max_examples=200, deadline=None)
@given(overpartitions)
def test_multiplicity_sequence_round_trip(op):
    ms = multiplicity_sequence(op)
    assert ms.to_overpartition() == op
    assert ms.weight == op.weight


@settings(max_examples=200, deadline=None)
@given(overpartitions)
def test_durfee_size_bounds(op):
    N = generalized_durfee_size(op)
    assert 0 <= N <= len(op)
    assert n_durfee_size(op, 0) >= 0


def test_enumeration_is_complete_and_distinct():
    for n in range(9):
        ops = list(iter_overpartitions(n))
        assert len(set(ops)) == len(ops)
        assert all(op.weight == n for op in ops)
