import numpy as np
import pytest

from gapbound.cyclotomic import Cyclotomic, omega
from gapbound.errors import InvalidModulus, TheoryMismatch
from gapbound.linalg import identity
from gapbound.theory import AnyonLabel, FSymbols, TheoryData, build_theory, fuse, verify_modular_relations

MODULI = [2, 3, 4, 5]


def test_s_entry_e_m(z3):
    e, m = z3.e, z3.m
    assert z3.s(e, m) == omega(3, -1)


def test_t_entry_em(z3):
    assert z3.theta(AnyonLabel(1, 1, 3)) == omega(3)


@pytest.mark.parametrize("n", MODULI)
def test_vacuum_row_of_s_is_one(n):
    t = build_theory(n)
    assert all(t.s(t.vacuum, b) == 1 for b in t.labels)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 0), (1, 0), (2, 0)), ((0, 0), (2, 1), (2, 1)), ((1, 2), (2, 1), (0, 0))],
)
def test_fuse(a, b, expected):
    assert fuse(AnyonLabel(*a, 3), AnyonLabel(*b, 3)) == AnyonLabel(*expected, 3)


def test_dual_and_labels():
    e = AnyonLabel(1, 0, 3)
    assert e * e == e.dual
    assert str(e.dual) == "e^2"
    assert str(AnyonLabel(1, 2, 3)) == "em^2"
    assert AnyonLabel(4, -1, 3).as_pair() == (1, 2)
    assert e.dim == 1


def test_fuse_mixed_theories():
    with pytest.raises(TheoryMismatch):
        fuse(AnyonLabel(1, 0, 3), AnyonLabel(1, 0, 2))


@pytest.mark.parametrize("n", [1, 0, -3])
def test_invalid_modulus(n):
    with pytest.raises(InvalidModulus):
        build_theory(n)


@pytest.mark.parametrize("n", MODULI)
def test_modular_relations_pass(n):
    report = verify_modular_relations(build_theory(n))
    assert report.ok, report.failures()


def test_trivial_t_breaks_modular_relation(z3):
    broken = TheoryData(z3.n, z3.labels, z3.S, identity(9), z3.R, z3.F, z3.global_dimension)
    report = verify_modular_relations(broken)
    assert not report.ok
    assert "st_cubed" in report.failures()


@pytest.mark.parametrize("n", MODULI)
def test_s_symmetric(n):
    t = build_theory(n)
    assert all(t.s(a, b) == t.s(b, a) for a in t.labels for b in t.labels)


@pytest.mark.parametrize("n", MODULI)
def test_s_column_orthogonality(n):
    # sum_a S_0a conj(S_xa) = D^2 delta_{x,0} with the unnormalized S
    t = build_theory(n)
    for x in t.labels:
        total = Cyclotomic(0)
        for a in t.labels:
            total = total + t.s(t.vacuum, a) * t.s(x, a).conjugate()
        assert total == (n * n if x.is_vacuum else 0)


@pytest.mark.parametrize("n", MODULI)
def test_monodromy_is_conjugate_s(n):
    t = build_theory(n)
    for a in t.labels:
        for b in t.labels:
            assert t.monodromy(a, b) == t.s(a, b).conjugate()


@pytest.mark.parametrize("n", MODULI)
def test_twist_is_self_braiding(n):
    t = build_theory(n)
    assert all(t.R[a, a] == t.theta(a) for a in t.labels)


def test_f_symbols(z3):
    e, m, vac = z3.e, z3.m, z3.vacuum
    assert z3.F[e, m, vac, fuse(e, m), fuse(e, m), m] == 1
    assert z3.F[e, m, vac, e, e, m] == 0  # e x m != e
    twisted = FSymbols(3, {(e, e, e, vac, e * e, e * e): omega(3)})
    assert twisted[e, e, e, vac, e * e, e * e] == omega(3)
    assert not twisted.is_trivial()
    assert z3.F.is_trivial()


def test_label_from_other_theory_rejected(z3):
    with pytest.raises(TheoryMismatch):
        z3.index(AnyonLabel(1, 0, 5))


def test_s_matrix_numerically_unitary(z3):
    s = np.array([[complex(x) for x in row] for row in z3.S]) / 3
    np.testing.assert_allclose(s @ s.conj().T, np.eye(9), atol=1e-12)
