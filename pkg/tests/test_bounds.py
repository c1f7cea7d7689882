from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffnull import (BudgetExceeded, Symbolic, T_value, Unsupported, ackermann, ackermann_recursive, alpha,
                      lemma_order_bound, lower_bound_formula, main_bound)
from diffnull.bounds import decimal


def test_alpha():
    assert alpha(2, 2) == 6
    assert alpha(1, 7) == 8
    assert alpha(3, 0) == 1
    assert alpha(2, -1) == 0


def test_T_m1_is_h():
    for n in range(1, 6):
        for h in range(0, 6):
            assert T_value(1, n, h) == h


def test_T_m2_recursion():
    assert T_value(2, 1, 1) == 16
    assert T_value(2, 2, 1) == 2**21
    assert T_value(2, 1, 2) == 2 ** (2 * 2 + 1 + 1) * 2   # b_1 = 2*2 + 1 = 5
    assert T_value(2, 3, 0) == 0


def test_T_general_m_unsupported():
    with pytest.raises(Unsupported, match="external reference"):
        T_value(3, 1, 1)


def test_T_budget():
    with pytest.raises(BudgetExceeded):
        T_value(2, 3, 1, digit_budget=1000)


@pytest.mark.parametrize("n, h", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_T_m2_strictly_increasing(n, h):
    assert T_value(2, n + 1, h) > T_value(2, n, h)
    assert T_value(2, n, h + 1) > T_value(2, n, h)


def test_main_bound_h0():
    assert main_bound(1, 3, 0, 5).bound == 0
    assert main_bound(2, 3, 0, 5).bound == 0


def test_main_bound_small_value():
    r = main_bound(1, 1, 1, 2, c=1)
    assert r.bound == 2**256
    assert r.T == 1 and r.alpha_T == 2 and r.alpha_T_minus_1 == 1
    assert r.is_numeric


def test_main_bound_symbolic_when_over_budget():
    r = main_bound(2, 1, 1, 1, c=1)
    assert isinstance(r.bound, Symbolic)
    assert r.T == 16 and r.alpha_T == comb(18, 2)
    assert not r.is_numeric


def test_main_bound_rejects_bad_constant():
    with pytest.raises(ValueError):
        main_bound(1, 1, 1, 2, c=0)
    with pytest.raises(ValueError):
        main_bound(1, 1, 1, 2, c=1.5)


def test_main_bound_json_fields():
    d = main_bound(1, 1, 1, 2).as_dict()
    for key in ("m", "n", "h", "D", "c", "T", "alpha_T", "bound_decimal_or_symbolic"):
        assert key in d
    assert d["bound_decimal_or_symbolic"] == decimal(2**256)


def _numeric(r):
    return r.bound if r.is_numeric else None


@pytest.mark.parametrize("axis", ["n", "h", "D"])
def test_main_bound_monotone(axis):
    base = dict(m=1, n=1, h=1, D=2)
    values = []
    for step in range(3):
        kw = dict(base)
        kw[axis] += step
        values.append(main_bound(kw["m"], kw["n"], kw["h"], kw["D"], digit_budget=10**5))
    nums = [_numeric(r) for r in values]
    known = [v for v in nums if v is not None]
    assert known == sorted(known)
    # once symbolic, larger parameters stay symbolic
    seen_symbolic = False
    for v in nums:
        if v is None:
            seen_symbolic = True
        assert not (seen_symbolic and v is not None)


def test_lemma_order_bound():
    assert lemma_order_bound(3, [2]) == 7
    assert lemma_order_bound(1, [2, 3]) == 9
    assert lemma_order_bound(5, []) == 5


@given(st.integers(0, 5), st.lists(st.integers(0, 4), max_size=4))
def test_lemma_order_bound_right_fold(q, ps):
    expected = q
    for p in reversed(ps):
        expected = 1 + expected * p
    assert lemma_order_bound(q, ps) == expected


def test_ackermann_examples():
    assert ackermann(1, 2) == 4
    assert ackermann(3, 3) == 61


@pytest.mark.parametrize("x", range(7))
def test_ackermann_closed_forms(x):
    assert ackermann(0, x) == x + 1
    assert ackermann(1, x) == x + 2
    assert ackermann(2, x) == 2 * x + 3
    assert ackermann(3, x) == 2 ** (x + 3) - 3


@pytest.mark.parametrize("i, x", [(i, x) for i in range(4) for x in range(5)] + [(4, 0)])
def test_ackermann_matches_literal_recursion(i, x):
    assert ackermann(i, x) == ackermann_recursive(i, x)


def test_ackermann_over_budget_is_symbolic():
    v = ackermann(5, 3)
    assert isinstance(v, Symbolic)
    assert ackermann(4, 2) == 2**65536 - 3


def test_lower_bound_formulas():
    assert lower_bound_formula("ex41", d=2, n=3, h=5) == 40
    assert lower_bound_formula("ex45", m=2, h=2) == 2
    assert lower_bound_formula("ex45", m=2, h=3) == 6
    assert lower_bound_formula("ex46", m=2, n=2, h=2) == 4
    assert lower_bound_formula("ex42", d=2, n=1, h=1, m=2) == 4
    with pytest.raises(ValueError):
        lower_bound_formula("ex45", m=1, h=2)
    with pytest.raises(ValueError):
        lower_bound_formula("nope", m=2, h=2)
