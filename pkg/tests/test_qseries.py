import pytest
from hypothesis import given, settings, strategies as st

from overlab import qseries as qs
from overlab.qseries import INF, Mono, TruncatedSeries


def test_pentagonal_numbers():
    s = qs.poch(Mono(1, 0, 1), INF, 30)
    nonzero = {n: s.coeff(n) for n in range(31) if s.coeff(n)}
    assert nonzero == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}


def test_overpartition_counts():
    s = qs.overpartition_gf(10, marked=False)
    assert [s.coeff(n) for n in range(11)] == [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]


def test_marked_overpartitions():
    s = qs.overpartition_gf(3)
    # 3, 2 1, 1 1 1 plain; four with one overline; 2' 1'
    assert s.row(3) == {(0, 0): 3, (1, 0): 4, (2, 0): 1}


@pytest.mark.parametrize("z", [Mono(1, 0, 0), Mono(-1, 0, -1), Mono(1, 0, -2), Mono(-1, 0, -3)])
def test_triple_product(z):
    assert qs.jtp_check(z, 25, base=3)


def test_qbinom():
    s = qs.qbinom(4, 2, 10)
    assert [s.coeff(n) for n in range(6)] == [1, 1, 2, 1, 1, 0]


def test_poch_negative_index_cancels():
    # (z;q)_n (zq^n;q)_{-n} = 1
    p = qs.poch_product(Mono(1, 1, 0), 3) * qs.poch_product(Mono(1, 1, 3), -3)
    assert p.series(10) == TruncatedSeries.one(10)


def test_e_series_start():
    e = qs.e_series(2, 2, 4)
    assert e.coeff(0) == 1
    assert e.row(1) == {(0, 0): 1, (1, 0): 1}


def test_e_zero_and_gamma_zero():
    for k in (2, 3):
        for i in range(1, k + 1):
            assert qs.e_n_series(k, i, 0, 10) == TruncatedSeries.one(10)
        assert qs.gamma_n_series(k, 0, 3, 10) == TruncatedSeries.zero(10)


@pytest.mark.parametrize("k,i", [(2, 1), (3, 2), (4, 4)])
def test_two_forms_of_d(k, i):
    assert qs.d_series(k, i, 20, form="binomial") == qs.d_series(k, i, 20, form="product")


def test_peak_refinements_sum_to_total():
    total = TruncatedSeries.zero(20)
    for N in range(21):
        total = total + qs.e_n_series(3, 2, N, 20)
    assert total == qs.e_series(3, 2, 20)


def test_j_series_basics():
    J = qs.j_series(3, 2, 15)
    assert J.set_x(0) == TruncatedSeries.one(15)
    assert J.set_x(1).negate_a() == qs.e_series(3, 2, 15)


def test_j_shift_relation():
    left = qs.j_series(3, 1, 12, xmax=15)
    right = qs.j_series(3, 3, 12, xmax=15).subs_x_q()
    assert left.truncate(12) == right.truncate(12)


def test_product_sides_match():
    for which in ("eq3", "eq4", "eq5", "eq6"):
        assert qs.specialized_e(which, 3, 2, 25) == qs.product_side(which, 3, 2, 25)


def test_n_durfee_identity():
    for n in (-2, 0, 3):
        assert qs.n_durfee_identity_check(n, 20)


def test_json_format():
    rows = qs.e_series(2, 2, 2).to_json()
    assert rows[1] == {"q": 1, "terms": [{"a": 0, "c": "1"}, {"a": 1, "c": "1"}]}


def test_truncation_mismatch_keeps_smaller():
    a = qs.overpartition_gf(5)
    b = qs.overpartition_gf(8)
    assert (a * b).qmax == 5


polys = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 3), st.just(0)),
    st.integers(-5, 5),
    max_size=8,
).map(lambda d: TruncatedSeries(6, d))


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(s, t, u):
    assert (s * t) * u == s * (t * u)
    assert s * (t + u) == s * t + s * u
    assert s + t - t == s


@settings(max_examples=150, deadline=None)
@given(polys)
def test_reciprocal(s):
    unit = TruncatedSeries.one(6) + s.shift(Mono(1, 0, 1))
    assert unit * unit.reciprocal() == TruncatedSeries.one(6)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k))))
def test_e_is_a_polynomial(ki):
    k, i = ki
    e = qs.e_series(k, i, 15)
    assert e.is_a_polynomial()
    assert all(c >= 0 for _, _, _, c in e.terms())
