import json

import pytest

from gapbound.boundary import ProductSpace
from gapbound.errors import InvalidInput
from gapbound.gates import GATE_NAMES, compile_gate
from gapbound.linalg import equal
from gapbound.serialize import (
    gate_json,
    gate_pretty,
    matrix_from_json,
    matrix_json,
    operator_from_json,
    operator_json,
    pretty_matrix,
    space_from_json,
    space_json,
    theory_from_json,
    theory_json,
)
from gapbound.theory import build_theory
from gapbound.wilson import loop, tunnel


def _through_text(obj):
    return json.loads(json.dumps(obj))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_theory_round_trip(n):
    t = build_theory(n)
    obj = _through_text(theory_json(t))
    assert obj["schema"] == "gbl/1" and obj["N"] == n
    assert theory_from_json(obj) is not None
    assert equal(matrix_from_json(obj["S"]), t.S)


def test_theory_tampering_detected(z3):
    obj = _through_text(theory_json(z3))
    k = next(i for i, a in enumerate(z3.labels) if z3.theta(a) != 1)
    obj["T"][k][k] = obj["T"][0][0]
    with pytest.raises(InvalidInput):
        theory_from_json(obj)


def test_space_round_trip(two_qutrits, qutrit):
    for sp in (two_qutrits, qutrit):
        again = space_from_json(_through_text(space_json(sp)))
        assert again.basis == sp.basis and again.boundaries == sp.boundaries
    prod = ProductSpace((qutrit, qutrit))
    again = space_from_json(_through_text(space_json(prod)))
    assert again.dims == (3, 3)


def test_space_basis_mismatch(qutrit):
    obj = _through_text(space_json(qutrit))
    obj["basis"] = obj["basis"][::-1]
    with pytest.raises(InvalidInput, match="basis"):
        space_from_json(obj)


def test_operator_round_trip(qutrit, z3):
    for op in (tunnel(qutrit, z3.e, 1, 2), loop(qutrit, z3.m, 2)):
        again = operator_from_json(_through_text(operator_json(op)))
        assert equal(again.entries, op.entries)
        assert again.provenance == op.provenance


@pytest.mark.parametrize("name", GATE_NAMES)
def test_gate_json_is_deterministic(name):
    a = json.dumps(gate_json(compile_gate(name)), sort_keys=True)
    b = json.dumps(gate_json(compile_gate(name)), sort_keys=True)
    assert a == b
    obj = json.loads(a)
    assert obj["kind"] == "gate" and obj["name"] == name
    assert ("projector" in obj) == (name == "M")


def test_gate_matrix_round_trip():
    g = compile_gate("CZ3")
    assert equal(matrix_from_json(_through_text(matrix_json(g.matrix.entries))), g.matrix.entries)


def test_pretty_forms(qutrit, z3):
    text = pretty_matrix(loop(qutrit, z3.m, 2).entries)
    assert text.splitlines()[1].split() == ["[", "0", "ω²", "0", "]"]
    out = gate_pretty(compile_gate("M"))
    assert "projector:" in out and "complement:" in out
    assert gate_pretty(compile_gate("CZ3")).count("\n") == 9
