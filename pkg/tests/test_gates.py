import pytest

from gapbound.charge import split_double_layer
from gapbound.cyclotomic import ONE, omega
from gapbound.errors import InvalidInput
from gapbound.gates import (
    GATE_NAMES,
    RecipeStep,
    clock,
    compile_gate,
    controlled_z,
    gate_CZ3,
    gate_H3,
    gate_M,
    gate_Q3,
    gate_SUM3_ee,
    gate_SUM3_mixed,
    gate_X3,
    gate_Z3,
    hadamard,
    recipe_matrix,
    shift,
    sum_gate,
)
from gapbound.linalg import dagger, diag, equal, identity, is_unitary, kron, matmul, matpow, scale

w = omega(3)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_hadamard_is_unitary_fourier(d):
    h = hadamard(d)
    assert is_unitary(h)
    # H^2 is the charge-conjugation permutation
    h2 = matmul(h, h)
    assert all(h2[(-c) % d, c] == 1 for c in range(d))
    assert equal(matpow(h, 4), identity(d))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_clock_shift_relations(d):
    x, z = shift(d), clock(d)
    assert equal(matmul(z, x), scale(matmul(x, z), omega(d)))
    assert equal(matmul(matmul(hadamard(d), z), dagger(hadamard(d))), dagger(x))


@pytest.mark.parametrize("d", [2, 3])
def test_cz_is_hadamard_conjugated_sum(d):
    ih = kron(identity(d), hadamard(d))
    assert equal(matmul(matmul(ih, sum_gate(d)), dagger(ih)), controlled_z(d))


def test_x3_and_z3():
    assert equal(gate_X3().matrix.entries, shift(3))
    z = gate_Z3()
    assert equal(z.matrix.entries, clock(3))
    assert z.phase == ONE


def test_h3_is_primitive():
    g = gate_H3()
    assert equal(g.matrix.entries, hadamard(3))
    assert "primitive" in g.notes


def test_cz3_is_the_braid():
    g = gate_CZ3()
    assert equal(g.matrix.entries, controlled_z(3))
    assert [s.primitive for s in g.recipe] == ["braid"]


def test_sum3_from_braid_and_hadamards():
    g = gate_SUM3_mixed()
    assert equal(g.matrix.entries, sum_gate(3))
    assert [(s.primitive, s.register, s.adjoint) for s in g.recipe] == [
        ("H3", 1, False),
        ("braid", None, False),
        ("H3", 1, True),
    ]
    assert equal(recipe_matrix(g.recipe, g.space), scale(g.matrix.entries, g.phase))


def test_q3():
    g = gate_Q3()
    assert equal(g.matrix.entries, diag([1, 1, w]))
    assert equal(recipe_matrix(g.recipe, g.space), scale(g.matrix.entries, g.phase))
    assert g.notes == "dehn^2 Z^1"


def test_dehn_twist_is_single_layer_t():
    t = split_double_layer(gate_Q3().space.theory).T()
    assert equal(t, diag([1, w, w]))  # w^(x^2) with x^2 = 0, 1, 1 mod 3


def test_m_projectors():
    g = gate_M()
    assert g.is_measurement and g.matrix is None
    assert equal(g.measurement.projector.entries, diag([1, 0, 0]))
    assert equal(g.measurement.complement.entries, diag([0, 1, 1]))


def test_sum3_ee_protocol():
    g = gate_SUM3_ee()
    assert equal(g.matrix.entries, sum_gate(3))
    assert g.space.describe() == "[e,e]x[e,e]"
    assert all(s.primitive == "circuit" for s in g.recipe)


def test_sum3_ee_rejects_bad_simulator():
    from gapbound.circuit import ChannelResult

    bad = lambda circ: ChannelResult(False, None, (0, 0), ())  # noqa: E731
    with pytest.raises(AssertionError, match="witness"):
        gate_SUM3_ee(simulator=bad)


@pytest.mark.parametrize("name", GATE_NAMES)
def test_compile_gate_phase_bookkeeping(name):
    g = compile_gate(name)
    assert g.name == name
    if g.is_measurement or name == "SUM3_ee":
        return
    assert is_unitary(g.matrix.entries)
    assert equal(recipe_matrix(g.recipe, g.space), scale(g.matrix.entries, g.phase))


def test_unknown_gate():
    with pytest.raises(InvalidInput, match="known"):
        compile_gate("T3")


def test_recipe_step_json_and_str():
    step = RecipeStep("H3", register=1, adjoint=True)
    assert step.to_json() == {"primitive": "H3", "register": 1, "adjoint": True}
    assert str(step) == "H3^dagger() on q1"
    assert str(RecipeStep("braid", {"pair": (2, 3)})) == "braid(pair=(2, 3))"


def test_register_needed_on_two_qutrits():
    g = gate_CZ3()
    with pytest.raises(InvalidInput):
        recipe_matrix([RecipeStep("H3")], g.space)
    with pytest.raises(InvalidInput):
        recipe_matrix([RecipeStep("circuit")], g.space)
