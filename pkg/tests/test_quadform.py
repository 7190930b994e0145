from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import fraction_pivots, hj_value
from hjstar.blowup import build_model
from hjstar.cfrac import dual_chain
from hjstar.quadform import (assign_indices, chain_diagonal, cs_check, elimination_pivots,
                             is_negative_definite, leading_minor_oracle, leading_minors,
                             model_cs_check, model_indices, star_diagonal,
                             star_elimination_order)
from hjstar.stargraph import FiberBranch, ModelGraph, ModuliData, StarGraph, intersection_matrix

F = Fraction
chain = st.lists(st.integers(2, 6), min_size=1, max_size=5).map(tuple)


def tridiagonal(c):
    n = len(c)
    return [[-c[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]


def test_chain_diagonal_examples():
    assert chain_diagonal((2, 3)).entries == (-2, F(-5, 2))
    assert chain_diagonal((2,)).entries == (-2,)
    assert chain_diagonal((2, 2, 2)).entries == (-2, F(-3, 2), F(-4, 3))


def test_star_diagonal_examples():
    assert star_diagonal(StarGraph(0, -1, ((2,),))).entries == (-2, F(-1, 2))
    d = star_diagonal(StarGraph(0, -1, ((2,), (2,))))
    assert d.entries == (-2, -2, 0) and not d.negative_definite
    assert star_diagonal(StarGraph(0, -4)).entries == (-4,)


@pytest.mark.parametrize("m,expected", [
    ([[-1]], True),
    ([[-1, 1, 1], [1, -2, 0], [1, 0, -2]], False),
    ([[-2, 1], [1, -2]], True),
])
def test_negdef_examples(m, expected):
    assert is_negative_definite(m) is expected
    assert leading_minor_oracle(m) is expected


def test_negdef_rejects_asymmetric():
    with pytest.raises(ValueError):
        is_negative_definite([[-1, 1], [0, -1]])
    with pytest.raises(ValueError):
        is_negative_definite([[-1, 0]])


def test_empty_matrix_is_negdef():
    assert is_negative_definite([])


@given(chain)
def test_chain_diagonal_matches_dense_elimination(c):
    assert list(chain_diagonal(c).entries) == fraction_pivots(tridiagonal(c))


@given(st.integers(1, 4), st.lists(chain, max_size=4))
def test_star_diagonal_matches_reordered_elimination(k, chains):
    g = StarGraph(0, -k, tuple(chains))
    m = intersection_matrix(g)
    order = star_elimination_order(g)
    permuted = [[m[i][j] for j in order] for i in order]
    d = star_diagonal(g)
    assert fraction_pivots(permuted) == list(d.entries)
    assert d.entries[-1] == -k + sum((1 / hj_value(c) for c in chains), F(0))
    assert d.negative_definite == is_negative_definite(m)


def test_leading_minors_small():
    assert leading_minors([[-2, 1], [1, -2]]) == [-2, 3]
    assert leading_minors([[-1, 1, 1], [1, -2, 0], [1, 0, -2]]) == [-1, 1, 0]


def _random_symmetric(draw_entries, n):
    m = [[0] * n for _ in range(n)]
    it = iter(draw_entries)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-4, 2), min_size=n * (n + 1) // 2,
                         max_size=n * (n + 1) // 2))))
def test_minor_oracle_agrees_with_elimination(args):
    n, entries = args
    m = _random_symmetric(entries, n)
    assert leading_minor_oracle(m) == is_negative_definite(m)


def test_minor_oracle_exhaustive_3x3():
    for e in product((-2, -1, 0, 1), repeat=6):
        m = _random_symmetric(e, 3)
        assert leading_minor_oracle(m) == is_negative_definite(m)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-3, 3), min_size=n * (n + 1) // 2,
                         max_size=n * (n + 1) // 2), st.permutations(range(n)))))
def test_any_elimination_order_gives_same_verdict(args):
    n, entries, order = args
    m = _random_symmetric(entries, n)
    pivots = elimination_pivots(m, list(order))
    assert (len(pivots) == n and all(p < 0 for p in pivots)) == is_negative_definite(m)


@given(chain)
def test_product_of_pivots_is_determinant(c):
    m = tridiagonal(c)
    prod = F(1)
    for p in elimination_pivots(m):
        prod *= p
    assert prod == leading_minors(m)[-1]


def test_assign_indices_examples():
    a = assign_indices((2, 2))
    assert cs_check((2, 2), a)
    assert a.index[("p1", "σ1")] == -2 and a.index[("p1", "σ2")] == F(-1, 2)
    assert a.index[("p2", "σ2")] == F(-3, 2)
    assert cs_check((3,), assign_indices((3,)))
    a.index[("p2", "σ2")] = F(-1)
    assert not cs_check((2, 2), a)


@given(chain)
def test_assigned_indices_are_running_values(c):
    a = assign_indices(c)
    for j in range(1, len(c) + 1):
        assert a.index[(f"p{j}", f"σ{j}")] == -hj_value(c[:j][::-1])
    assert a.reciprocity_holds() and a.nonzero() and cs_check(c, a)


def test_model_index_examples():
    m = build_model(ModuliData(0, 1, ((2,),)))
    sums = model_indices(m).curve_sums()
    assert sums["σ~1"] == -1 and model_cs_check(m)
    m = build_model(ModuliData(0, 1, ((2, 2),)))
    a = model_indices(m)
    assert a.index[("p1_2", "σ~1")] == F(-2, 3) and a.index[("q1_1", "σ~1")] == F(-1, 3)
    assert model_cs_check(m)


@given(chain, chain)
def test_non_dual_l_chain_fails_index_theorem(k_chain, l_chain):
    m = ModelGraph(0, 1, (FiberBranch(k_chain, l_chain),))
    assert model_cs_check(m) == (l_chain == dual_chain(k_chain))
