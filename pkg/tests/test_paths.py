import pytest
from hypothesis import given, settings, strategies as st

from overlab import qseries as qs
from overlab.paths import (
    NE,
    SE,
    InvalidPath,
    LatticePath,
    check_shape,
    enumerate_paths,
    enumerate_paths_upto,
    height_profile,
    iter_paths_upto,
    major_index,
    path_stats,
    peaks,
    relative_heights,
    validate,
)

import goldens as G


def test_major_index_example():
    p = G.PATH_MAJOR_19
    assert validate(p, 3, 1)
    assert major_index(p) == 19
    assert path_stats(p) == (19, 2, 4)


def test_peak_coordinates():
    assert [(p.x, p.y, p.u) for p in peaks(G.PATH_FIVE_PEAKS)] == [
        (6, 4, 0), (9, 3, 0), (12, 3, 1), (18, 2, 1), (22, 4, 1)]


def test_relative_heights():
    assert relative_heights(G.PATH_SIX_PEAKS) == [1, 2, 1, 4, 3, 2]
    assert relative_heights(G.BASE) == [1, 3, 1]


def test_vertices_round_trip():
    p = G.PATH_FIVE_PEAKS
    assert LatticePath.from_vertices(p.vertices()) == p


def test_shape_errors():
    assert "does not follow NE" in check_shape(LatticePath(1, ("S",)))
    assert "height 1" in check_shape(LatticePath(1, ("E", "SE")))
    assert check_shape(LatticePath(1, (NE,))) is not None
    with pytest.raises(InvalidPath):
        LatticePath(0, ("N",))


def test_height_bound():
    p = LatticePath(0, (NE, NE, SE, SE))
    assert validate(p, 3, 3) and not validate(p, 2, 2)


def test_empty_and_descent():
    assert enumerate_paths(2, 2, 0) == [LatticePath(0, ())]
    assert enumerate_paths(3, 1, 0) == [LatticePath(2, (SE, SE))]


@pytest.mark.parametrize("k,i", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_counts_match_series(k, i):
    paths = enumerate_paths_upto(k, i, 16)
    e = qs.e_series(k, i, 16)
    for n in range(17):
        assert len(paths[n]) == sum(e.row(n).values())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (3, 2), (4, 1), (4, 4)]), st.integers(0, 12), st.data())
def test_enumerated_paths_are_valid(ki, n, data):
    k, i = ki
    ps = enumerate_paths(k, i, n)
    if ps:
        p = data.draw(st.sampled_from(ps))
        assert validate(p, k, i) and major_index(p) == n
        prof = height_profile(p, k)
        assert prof[0] == len(peaks(p))
        assert all(h <= k - 1 for h in relative_heights(p))


def test_paths_are_distinct():
    ps = list(iter_paths_upto(3, 2, 14))
    assert len(set(ps)) == len(ps)
