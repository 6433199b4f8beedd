from itertools import product

import pytest

from conftest import oracle_gsd, oracle_lagrangians, pairs_of
from gapbound.boundary import (
    ProductSpace,
    build_ground_space,
    enumerate_lagrangians,
    is_lagrangian,
    lagrangian_by_key,
    qudit_registers,
)
from gapbound.errors import AmbiguousRegister, InvalidInput, TheoryMismatch
from gapbound.theory import AnyonLabel, build_theory


@pytest.mark.parametrize("n, count", [(2, 2), (3, 2), (4, 3), (5, 2)])
def test_lagrangians_match_brute_force(n, count):
    algebras = enumerate_lagrangians(build_theory(n))
    assert {pairs_of(a) for a in algebras} == oracle_lagrangians(n)
    assert len(algebras) == count


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_e_and_m_come_first(n):
    algebras = enumerate_lagrangians(build_theory(n))
    assert [a.key for a in algebras[:2]] == ["e", "m"]
    assert pairs_of(algebras[0]) == frozenset((x, 0) for x in range(n))
    assert pairs_of(algebras[1]) == frozenset((0, y) for y in range(n))


def test_diagonal_algebra_for_n4():
    extra = enumerate_lagrangians(build_theory(4))[2]
    assert pairs_of(extra) == frozenset({(0, 0), (2, 0), (0, 2), (2, 2)})
    assert extra.key == "L2"


def test_lookup_by_name(z3, e3):
    assert lagrangian_by_key(z3, "1+e+e^2") == e3
    with pytest.raises(InvalidInput, match="known: e, m"):
        lagrangian_by_key(z3, "x")


def test_is_lagrangian_rejects(z3):
    em = [AnyonLabel(0, 0, 3), AnyonLabel(1, 1, 3), AnyonLabel(2, 2, 3)]
    assert not is_lagrangian(z3, em)  # em has twist omega
    assert not is_lagrangian(z3, [z3.vacuum, z3.e])


def _gsd_cases():
    for n in (2, 3, 4):
        algebras = enumerate_lagrangians(build_theory(n))
        for holes in (1, 2, 3, 4):
            for combo in product(range(len(algebras)), repeat=holes):
                if holes == 4 and n == 4 and len(set(combo)) > 2:
                    continue  # keep the parametrization small; the tuple space is covered below
                yield n, combo


@pytest.mark.parametrize("n, combo", list(_gsd_cases()))
def test_ground_space_dimension_matches_oracle(n, combo):
    algebras = enumerate_lagrangians(build_theory(n))
    chosen = [algebras[i] for i in combo]
    space = build_ground_space(chosen)
    assert space.dim == oracle_gsd([sorted(pairs_of(a)) for a in chosen], n)


def test_all_n4_four_hole_spaces(z3):
    algebras = enumerate_lagrangians(build_theory(4))
    for combo in product(algebras, repeat=4):
        space = build_ground_space(combo)
        assert space.dim == oracle_gsd([sorted(pairs_of(a)) for a in combo], 4)


def test_basis_conserves_charge(two_qutrits, z3):
    for lab in two_qutrits.basis:
        total = z3.vacuum
        for a in lab:
            total = total * a
        assert total.is_vacuum
        assert all(a in b for a, b in zip(lab, two_qutrits.boundaries))


def test_qutrit_basis_order(qutrit, z3):
    e = z3.e
    assert qutrit.basis == ((z3.vacuum, z3.vacuum), (e * e, e), (e, e * e))


def test_two_qutrit_registers(two_qutrits):
    assert two_qutrits.dim == 9
    regs = qudit_registers(two_qutrits, [(1, 2), (3, 4)])
    assert regs.dims == (3, 3)
    # the register grid is row-major in basis order
    assert regs.to_tuple == tuple((c1, c2) for c1 in range(3) for c2 in range(3))


def test_four_e_holes_not_two_qutrits(z3, e3):
    space = build_ground_space([e3] * 4)
    assert space.dim == 27
    with pytest.raises(AmbiguousRegister):
        qudit_registers(space, [(1, 2), (3, 4)])


def test_mixed_pair_is_ambiguous(z3, e3, m3):
    space = build_ground_space([e3, m3, e3, m3])
    with pytest.raises(AmbiguousRegister):
        qudit_registers(space, [(1, 2), (3, 4)])


def test_mixed_pair_with_trivial_charge(e3, m3):
    space = build_ground_space([e3, m3])
    assert space.dim == 1
    assert qudit_registers(space, [(1, 2)]).dims == (1,)


def test_bad_pairing(two_qutrits):
    with pytest.raises(InvalidInput):
        qudit_registers(two_qutrits, [(1, 2), (2, 3)])


def test_errors(e3):
    with pytest.raises(InvalidInput):
        build_ground_space([])
    other = lagrangian_by_key(build_theory(5), "e")
    with pytest.raises(TheoryMismatch):
        build_ground_space([e3, other])
    space = build_ground_space([e3, e3])
    with pytest.raises(InvalidInput):
        space.boundary(3)


def test_product_space(qutrit):
    ps = ProductSpace((qutrit, qutrit))
    assert ps.dim == 9 and ps.dims == (3, 3)
    assert ps.basis[4] == (1, 1)
    assert repr(ps) == "ProductSpace([e,e]x[e,e], dim=9)"
