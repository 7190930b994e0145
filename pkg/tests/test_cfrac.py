from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import chains_upto, hj_value
from hjstar.cfrac import (all_chains, as_chain, cf_eval, cf_eval_reversed, dual_chain,
                          hj_expand)

chains = st.lists(st.integers(2, 9), min_size=1, max_size=7).map(tuple)


def test_known_values():
    assert cf_eval((2,)) == 2
    assert cf_eval((2, 2)) == Fraction(3, 2)
    assert cf_eval((3, 2)) == Fraction(5, 2)
    assert cf_eval((2, 3)) == Fraction(5, 3)
    assert cf_eval((2, 2, 2)) == Fraction(4, 3)
    assert cf_eval_reversed((2, 3)) == Fraction(5, 2)


def test_expand_examples():
    assert hj_expand(Fraction(5, 3)) == (2, 3)
    assert hj_expand(Fraction(7, 3)) == (3, 2, 2)
    assert hj_expand(4) == (4,)


@pytest.mark.parametrize("bad", [1, Fraction(1, 2), 0, -3])
def test_expand_rejects_small(bad):
    with pytest.raises(ValueError):
        hj_expand(bad)


def test_dual_examples():
    assert dual_chain((2,)) == (2,)
    assert dual_chain((3,)) == (2, 2)
    assert dual_chain((2, 2)) == (3,)
    assert dual_chain((2, 3)) == (3, 2)
    assert dual_chain((4,)) == (2, 2, 2)


@pytest.mark.parametrize("bad,exc", [((), ValueError), ((1,), ValueError),
                                     ((2, 0), ValueError), ((2.0,), TypeError)])
def test_as_chain_rejects(bad, exc):
    with pytest.raises(exc):
        as_chain(bad)


def test_all_chains_count():
    got = list(all_chains(3, 4))
    assert len(got) == 3 + 9 + 27
    assert len(set(got)) == len(got)


@given(chains)
def test_eval_matches_recursion(c):
    assert cf_eval(c) == hj_value(c)
    assert cf_eval_reversed(c) == hj_value(c[::-1])


@given(chains)
def test_expand_inverts_eval(c):
    assert hj_expand(cf_eval(c)) == c


@given(chains)
def test_value_exceeds_one(c):
    assert cf_eval(c) > 1


@given(st.fractions(min_value=Fraction(101, 100), max_value=50, max_denominator=400)
       .filter(lambda q: q > 1))
def test_eval_inverts_expand(q):
    assert cf_eval(hj_expand(q)) == q


def test_dual_involution_exhaustive():
    for c in chains_upto(5, 6):
        assert dual_chain(dual_chain(c)) == c


def test_dual_identity_and_length_exhaustive():
    for c in chains_upto(4, 6):
        l = dual_chain(c)
        assert 1 / hj_value(c[::-1]) + 1 / hj_value(l[::-1]) == 1
        # point-diagram count: sum(k_i - 2) + 1 = m and symmetrically
        assert sum(k - 2 for k in c) + 1 == len(l)
        assert sum(w - 2 for w in l) + 1 == len(c)
