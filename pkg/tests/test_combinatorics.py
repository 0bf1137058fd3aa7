from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from wickdisc import combinatorics as cb

idx = st.lists(st.integers(0, 6), min_size=1, max_size=4)


def test_multi_binom_small():
    assert cb.multi_binom((3, 2), (1, 1)) == 6
    assert cb.multi_binom((2,), (3,)) == 0
    with pytest.raises(ValueError):
        cb.multi_binom((1, 2), (1,))


@given(idx, st.data())
def test_multi_binom_matches_sympy(P, data):
    T = tuple(data.draw(st.integers(0, 8)) for _ in P)
    expected = 1
    for p, t in zip(P, T):
        expected *= int(sp.binomial(p, t)) if t <= p else 0
    assert cb.multi_binom(P, T) == expected


@given(idx)
def test_multinomial(T):
    assert cb.multinomial(tuple(T)) == factorial(sum(T)) // cb.multi_factorial(T)


@pytest.mark.parametrize("length", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_with_degree_count(length, k):
    items = list(cb.with_degree(length, k))
    assert len(items) == len(set(items)) == cb.count_with_degree(length, k) == comb(length - 1 + k, k)
    assert all(sum(P) == k and len(P) == length for P in items)


def test_below_and_leq():
    box = list(cb.below((1, 2)))
    assert len(box) == 6 and box[0] == (0, 0) and box[-1] == (1, 2)
    assert all(cb.leq(T, (1, 2)) for T in box)
    assert cb.sub((3, 2), (1, 2)) == (2, 0)
    with pytest.raises(ValueError):
        cb.sub((0, 1), (1, 0))


def test_graded_lex_order():
    keys = [((1,), (0,)), ((0,), (0,)), ((0,), (1,)), ((1,), (1,))]
    assert sorted(keys, key=lambda k: cb.graded_lex_key(*k))[0] == ((0,), (0,))
    assert cb.graded_lex_key((0,), (1,)) < cb.graded_lex_key((1,), (0,)) < cb.graded_lex_key((1,), (1,))
