from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_q
from diffnull import (DiffRing, DiffSystem, NotLinear, apply_theta, build_matrix, ideal_membership,
                      linear_membership, linear_threshold, min_prolongation_linear, min_rep_degree,
                      prolong, representation, snapshot, tilde, untilde, verify, x_ring)
from diffnull.commpoly import Poly
from diffnull.families import FamilySpec, generate


def test_tilde_examples():
    X = x_ring(2)
    X1, X2 = X.gens()
    R = DiffRing(2, 1)
    assert tilde(X.one()) == R.y(1)
    assert tilde(X1 - X2**3) == R.y(1, (1, 0)) - R.y(1, (0, 3))
    assert tilde(3 * X1 * X2 + Fraction(1, 2)) == 3 * R.y(1, (1, 1)) + R.y(1) / 2


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_q.filter(bool), max_size=5))
def test_untilde_inverts_tilde(terms):
    f = Poly(x_ring(2), terms)
    assert untilde(tilde(f)) == f


def test_untilde_rejects_nonlinear():
    R = DiffRing(2, 2)
    with pytest.raises(NotLinear):
        untilde(R.y(1) ** 2)
    with pytest.raises(NotLinear):
        untilde(R.y(1) + R.y(2))


def test_nonlinear_systems_rejected():
    R = DiffRing(1, 1)
    with pytest.raises(NotLinear):
        linear_membership(R.y(1), [R.y(1) ** 2], 1)
    with pytest.raises(NotLinear):
        linear_membership(R.y(1), [R.y(1) - 1], 1)


def test_build_matrix_shapes():
    R = DiffRing(2, 1)
    M = build_matrix([R.y(1, (1, 0))], 1, R.y(1))
    assert len(M.rows) == 3
    ex45 = generate(FamilySpec("ex45", m=2, h=2))
    M = build_matrix(ex45, 2, ex45.ring.y(1))
    assert len(M.rows) == 12
    col = {v: k for k, v in enumerate(M.columns)}
    for (gi, theta), row in zip(M.row_labels, M.rows):
        g = apply_theta(ex45[gi], theta)
        for mono, c in g.terms.items():
            assert row[col[mono[0][0]]] == c
        assert sum(1 for a in row if a) == len(g.terms)


def test_ex45_membership_flip():
    F = generate(FamilySpec("ex45", m=2, h=2))
    y = F.ring.y(1)
    ok, cert = linear_membership(y, F, 2)
    assert ok and verify(cert, F).ok
    assert cert.max_order() <= 2
    assert linear_membership(y, F, 1) == (False, None)


def test_generator_is_member_at_zero():
    F = generate(FamilySpec("ex45", m=2, h=3))
    ok, cert = linear_membership(F[1], F, 0)
    assert ok and verify(cert, F).ok
    assert min_prolongation_linear(F[0], F, 3) == 0


@pytest.mark.parametrize("h, expected", [(2, 2), (3, 6)])
def test_ex45_thresholds(h, expected):
    F = generate(FamilySpec("ex45", m=2, h=h))
    assert min_prolongation_linear(F.ring.y(1), F, expected + 1) == expected


def test_ex46_threshold():
    F = generate(FamilySpec("ex46", m=2, n=2, h=2))
    assert min_prolongation_linear(F.ring.y(2), F, 5) == 4


def test_ranks_are_monotone():
    F = generate(FamilySpec("ex46", m=2, n=2, h=3))
    res = linear_threshold(F.ring.y(2), F, 12)
    assert res.order == 12
    assert list(res.ranks) == sorted(res.ranks)
    assert verify(res.certificate, F).ok


def test_min_rep_degree_examples():
    X = x_ring(2)
    X1, X2 = X.gens()
    fs = [X1**2, 1 - X1 * X2]
    assert min_rep_degree(X.one(), fs, 4) == 2
    assert min_rep_degree(fs[0], fs, 2) == 0
    assert min_rep_degree(X.one(), [X1, 1 - X1], 2) == 0
    assert min_rep_degree(X1, [X2], 3) is None
    cert = representation(X.one(), fs, 2)
    assert cert.verify(fs).ok


def test_linear_agrees_with_groebner_on_snapshots():
    F = generate(FamilySpec("ex45", m=2, h=2))
    y = F.ring.y(1)
    for l in range(3):
        cap = F.order + l
        gens = snapshot(prolong(F, l), cap)
        assert linear_membership(y, F, l)[0] == ideal_membership(snapshot(y, cap), gens)


@st.composite
def linear_instances(draw):
    """A few polynomials in Q[X1, X2] and a member of their ideal."""
    X = x_ring(2)
    mono = st.tuples(st.integers(0, 2), st.integers(0, 2))
    fs = [Poly(X, draw(st.dictionaries(mono, small_q.filter(bool), min_size=1, max_size=3)))
          for _ in range(draw(st.integers(1, 2)))]
    f = X.zero()
    for fi in fs:
        low = mono.filter(lambda e: sum(e) <= 2)
        f = f + Poly(X, draw(st.dictionaries(low, small_q.filter(bool), max_size=2))) * fi
    return f, fs


@given(linear_instances())
def test_transfer_to_linear_systems(inst):
    f, fs = inst
    k = min_rep_degree(f, fs, 2)
    assert k is not None
    G = DiffSystem.of([tilde(g) for g in fs])
    res = linear_threshold(tilde(f), G, 2)
    assert res.order == k
    if f:
        assert verify(res.certificate, G).ok
