import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapbound.boundary import build_ground_space, enumerate_lagrangians
from gapbound.cyclotomic import Cyclotomic, omega
from gapbound.errors import InvalidInput, NotCondensable
from gapbound.linalg import cmat, diag, equal, identity, matpow, scale
from gapbound.theory import build_theory
from gapbound.wilson import MSymbolTable, OperatorMatrix, checked, compose_tunnels, is_unitary, loop, tunnel

w = omega(3)


def test_tunnel_e_is_cyclic_shift(qutrit, z3):
    X = tunnel(qutrit, z3.e, 1, 2)
    assert equal(X.entries, cmat([[0, 0, 1], [1, 0, 0], [0, 1, 0]]))


def test_loop_m_is_clock(qutrit, z3):
    assert equal(loop(qutrit, z3.m, 2).entries, diag([1, w * w, w]))
    assert equal(loop(qutrit, z3.m ** 2, 2).entries, diag([1, w, w * w]))


def test_loop_e_is_trivial_on_e_holes(qutrit, z3):
    assert equal(loop(qutrit, z3.e, 1).entries, identity(3))


def test_weyl_commutation(qutrit, z3):
    X = tunnel(qutrit, z3.e, 1, 2)
    Z = loop(qutrit, z3.m, 2)
    assert equal((X @ Z).entries, scale((Z @ X).entries, w))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_tunnel_group_law(n):
    t = build_theory(n)
    e = enumerate_lagrangians(t)[0]
    sp = build_ground_space([e, e])
    X = tunnel(sp, t.e, 1, 2)
    assert equal(matpow(X.entries, n), identity(n))
    for k in range(1, n):
        assert equal((tunnel(sp, t.e ** k, 1, 2) @ X).entries, tunnel(sp, t.e ** (k + 1), 1, 2).entries)
    # reversing direction inverts
    assert equal((tunnel(sp, t.e, 2, 1) @ X).entries, identity(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_loop_group_law(n):
    t = build_theory(n)
    e = enumerate_lagrangians(t)[0]
    sp = build_ground_space([e, e])
    for a in t.labels:
        for b in t.labels:
            assert equal((loop(sp, a, 2) @ loop(sp, b, 2)).entries, loop(sp, a * b, 2).entries)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_loop_around_either_hole(n):
    t = build_theory(n)
    e = enumerate_lagrangians(t)[0]
    sp = build_ground_space([e, e])
    for a in t.labels:
        assert equal(loop(sp, a, 1).entries, loop(sp, a.dual, 2).entries)


@given(st.sampled_from([2, 3, 4, 5]), st.data())
@settings(max_examples=60, deadline=None)
def test_tunnels_are_permutations(n, data):
    t = build_theory(n)
    algebras = enumerate_lagrangians(t)
    holes = data.draw(st.lists(st.sampled_from(algebras), min_size=2, max_size=3))
    sp = build_ground_space(holes)
    i, j = data.draw(st.sampled_from([(i, j) for i in range(1, len(holes) + 1) for j in range(1, len(holes) + 1) if i != j]))
    movable = [a for a in t.labels if a in holes[j - 1] and a.dual in holes[i - 1]]
    a = data.draw(st.sampled_from(movable))
    op = tunnel(sp, a, i, j)
    assert is_unitary(op)
    m = op.entries
    assert all(sum(1 for x in row if not x.is_zero()) == 1 for row in m)


def test_condensation_required(qutrit, z3):
    with pytest.raises(NotCondensable):
        tunnel(qutrit, z3.m, 1, 2)


def test_hole_errors(qutrit, z3):
    with pytest.raises(InvalidInput):
        tunnel(qutrit, z3.e, 1, 1)
    with pytest.raises(InvalidInput):
        tunnel(qutrit, z3.e, 0, 2)
    with pytest.raises(InvalidInput):
        loop(qutrit, z3.e, 3)


def test_compose_default_m_symbols(qutrit, z3):
    e = z3.e
    assert compose_tunnels(qutrit, e, e) == {e * e: Cyclotomic(1)}


def test_compose_with_user_m_symbol(qutrit, z3, e3):
    e = z3.e
    m1 = MSymbolTable(e3, {(e, e, e * e): w})
    assert compose_tunnels(qutrit, e, e, m1=m1) == {e * e: w}
    # conjugated on the second boundary
    assert compose_tunnels(qutrit, e, e, m1=m1, m2=m1) == {e * e: Cyclotomic(1)}


def test_m_symbol_rejects_non_condensing(e3, z3):
    with pytest.raises(NotCondensable):
        MSymbolTable(e3)[z3.m, z3.e, z3.m * z3.e]
    assert MSymbolTable(e3)[z3.e, z3.e, z3.e] == 0


def test_is_unitary_and_checked(qutrit):
    third = Cyclotomic.parse("1/3")
    J = OperatorMatrix(qutrit, cmat([[third] * 3] * 3), "J/3")
    assert not is_unitary(J)
    with pytest.warns(UserWarning, match="not unitary"):
        assert checked(J) is J
    X = OperatorMatrix(qutrit, identity(3), "I")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        checked(X)


def test_operator_shape_checked(qutrit):
    with pytest.raises(InvalidInput):
        OperatorMatrix(qutrit, identity(2), "bad")


def test_numeric_clock_shift(qutrit, z3):
    X = np.array(tunnel(qutrit, z3.e, 1, 2).entries, dtype=complex)
    Z = np.array(loop(qutrit, z3.m, 2).entries, dtype=complex)
    np.testing.assert_allclose(X @ Z @ np.linalg.inv(Z @ X), np.exp(2j * np.pi / 3) * np.eye(3), atol=1e-12)
