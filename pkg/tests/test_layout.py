from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ubqp_lp.layout import Layout, dims, reference_pair


@pytest.mark.parametrize("n,expected", [(3, (1, 3, 0)), (4, (4, 6, 8)), (5, (10, 10, 25))])
def test_dims(n, expected):
    assert dims(n) == expected


def test_dims_rejects_small():
    with pytest.raises(ValueError):
        dims(2)


def test_iota_n4_values():
    lay = Layout(4)
    assert [lay.iota(i, j) for i, j in lay.pairs] == [1, 2, 3, 4, 5, 6]
    assert lay.iota(3, 1) == lay.iota(1, 3) == 2
    with pytest.raises(IndexError):
        lay.iota(2, 2)
    with pytest.raises(IndexError):
        lay.iota(1, 5)


@given(st.integers(3, 30))
def test_iota_is_lexicographic_bijection(n):
    lay = Layout(n)
    assert [lay.iota(i, j) for i, j in lay.pairs] == list(range(1, comb(n, 2) + 1))


@given(st.integers(3, 14))
def test_triplet_rank_matches_enumeration(n):
    lay = Layout(n)
    for r, t in enumerate(lay.triplets, start=1):
        assert lay.triplet_rank(*t) == r
        assert lay.triplet_at(r) == t


def test_alpha_positions_n3():
    lay = Layout(3)
    assert [lay.alpha_pos(1), lay.alpha_pos(1, 2), lay.alpha_pos(1, 3), lay.alpha_pos(2), lay.alpha_pos(2, 3),
            lay.alpha_pos(3)] == [1, 2, 3, 4, 5, 6]


def test_columns_and_names():
    lay = Layout(4)
    names = lay.var_names()
    assert len(names) == lay.n_vars == 8 * 4 + 12
    assert names[lay.lam_col(2, 3)] == "lam[2][3]"
    assert names[lay.u_col(2, 4)] == "u[2][4]"
    assert names[lay.v_col(1, 3)] == "v[1][3]"


def test_reference_pairs():
    assert [reference_pair(i) for i in (1, 2, 3, 7)] == [(2, 3), (1, 3), (1, 2), (1, 2)]
