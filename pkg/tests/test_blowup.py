import pytest
from hypothesis import given, strategies as st

from conftest import chains_upto
from hjstar.blowup import (Bamboo, base_bamboo, blow_down, blow_up_edge, build_fiber_bamboo,
                           build_model, contract_to_base, fiber_weights, reversal_check,
                           reversed_fiber_weights)
from hjstar.cfrac import dual_chain
from hjstar.stargraph import ModuliData

chain = st.lists(st.integers(2, 6), min_size=1, max_size=4).map(tuple)


@pytest.mark.parametrize("k,expected", [(1, (-1, 0, 1)), (2, (-2, 0, 2)), (5, (-5, 0, 5))])
def test_base(k, expected):
    assert base_bamboo(k).weights == expected


def test_base_rejects_k0():
    with pytest.raises(ValueError):
        base_bamboo(0)


def test_blow_up_examples():
    b = blow_up_edge(base_bamboo(2), 1)
    assert b.weights == (-2, -1, -1, 1)
    assert blow_up_edge(b, 1).weights == (-2, -2, -1, -2, 1)
    assert blow_up_edge(base_bamboo(1), 0).weights == (-2, -1, -1, 1)
    assert blow_up_edge(b, 1).trace == ((-2, 0, 2), (-2, -1, -1, 1))


def test_blow_up_bad_edge():
    with pytest.raises(IndexError):
        blow_up_edge(base_bamboo(1), 2)


def test_blow_down_examples():
    assert blow_down(Bamboo((-2, -1, -1, 1)), 1).weights == (-1, 0, 1)
    assert blow_down(Bamboo((-1, -2, -1, -2, 0)), 2).weights == (-1, -1, -1, 0)
    for i in range(3):
        with pytest.raises(ValueError, match="only interior"):
            blow_down(Bamboo((-2, 0, 2)), i)


def test_contract_examples():
    c = contract_to_base(Bamboo((-1, -2, -1, -2, 0)))
    assert c.success and c.k == 1 and len(c.trace) == 3
    c = contract_to_base(Bamboo((-1, -2, -2, -1, -3, 0)))
    assert c.success and c.k == 1 and len(c.trace) == 4
    c = contract_to_base(Bamboo((-1, -2, -2, 0)))
    assert not c.success and c.k is None and c.final == (-1, -2, -2, 0)


def test_contract_unknown_rule():
    with pytest.raises(ValueError):
        contract_to_base(base_bamboo(1), rule="random")


def test_fiber_examples():
    assert build_fiber_bamboo(2, (3,)).weights == (-2, -3, -1, -2, -2, 1)
    assert build_fiber_bamboo(1, (2,)).weights == (-1, -2, -1, -2, 0)
    assert build_fiber_bamboo(1, (2, 3)).weights == (-1, -2, -3, -1, -2, -3, 0)
    assert build_fiber_bamboo(2, (3,)).forward_trace() == (
        (-2, 0, 2), (-2, -1, -1, 1), (-2, -2, -1, -2, 1), (-2, -3, -1, -2, -2, 1))


@pytest.mark.parametrize("k,c,rev", [(1, (2, 2), (-1, -2, -2, -1, -3, 0)),
                                     (2, (3,), (-2, -3, -1, -2, -2, 1)),
                                     (1, (2, 3), None)])
def test_reversal_examples(k, c, rev):
    if rev is not None:
        assert reversed_fiber_weights(k, c) == rev
    assert reversal_check(k, c)


@given(st.integers(1, 5), chain)
def test_history_is_a_sequence_of_blow_ups(k, c):
    b = build_fiber_bamboo(k, c)
    steps = b.forward_trace()
    assert steps[0] == (-k, 0, k)
    assert len(steps) == len(c) + len(dual_chain(c)) + 1
    for before, after in zip(steps, steps[1:]):
        assert any(blow_up_edge(Bamboo(before), i).weights == after
                   for i in range(1, len(before) - 1))


def test_fiber_contraction_exhaustive():
    for k in range(1, 4):
        for c in chains_upto(4, 5):
            w = fiber_weights(k, c, dual_chain(c))
            left = contract_to_base(Bamboo(w), "leftmost")
            right = contract_to_base(Bamboo(w), "rightmost")
            assert left.success and right.success and left.k == right.k == k
            assert reversal_check(k, c)


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=7).map(tuple), st.data())
def test_blow_up_then_down_round_trip(w, data):
    i = data.draw(st.integers(0, len(w) - 2))
    up = blow_up_edge(Bamboo(w), i)
    assert blow_down(up, i + 1).weights == w


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=7).map(tuple), st.data())
def test_blow_down_then_up_round_trip(w, data):
    cands = [i for i in range(1, len(w) - 1) if w[i] == -1]
    if not cands:
        return
    i = data.draw(st.sampled_from(cands))
    assert blow_up_edge(blow_down(Bamboo(w), i), i - 1).weights == w


@given(st.integers(1, 4), st.lists(chain, max_size=3))
def test_build_model_inf_weight(k, chains):
    m = build_model(ModuliData(0, k, tuple(chains)))
    assert m.center_inf_weight == k - len(chains)
    assert m.is_dual()
