"""JSON and pretty-matrix forms of theories, spaces, operators, and gates.

Every top-level object carries ``"schema": "gbl/1"``.  Numbers use the
:meth:`Cyclotomic.to_json` form and matrices are row-major nested lists.
"""

from __future__ import annotations

import numpy as np

from .boundary import GroundSpace, ProductSpace, build_ground_space, lagrangian_by_key
from .cyclotomic import Cyclotomic
from .errors import InvalidInput
from .gates import CompiledGate
from .theory import AnyonLabel, TheoryData, build_theory
from .wilson import OperatorMatrix

SCHEMA = "gbl/1"


def matrix_json(m: np.ndarray) -> list[list[dict]]:
    return [[x.to_json() for x in row] for row in m]


def matrix_from_json(rows: list[list[dict]]) -> np.ndarray:
    n = len(rows)
    out = np.empty((n, len(rows[0]) if n else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = Cyclotomic.from_json(x)
    return out


def pretty_matrix(m: np.ndarray, symbol: str = "ω") -> str:
    cells = [[x.pretty(symbol) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def theory_json(t: TheoryData) -> dict:
    labels = [list(a.as_pair()) for a in t.labels]
    R = [[t.R[a, b].to_json() for b in t.labels] for a in t.labels]
    return {
        "schema": SCHEMA,
        "kind": "theory",
        "N": t.n,
        "labels": labels,
        "S": matrix_json(t.S),
        "T": matrix_json(t.T),
        "R": R,
        "F": "trivial" if t.F.is_trivial() else "twisted",
        "global_dimension": t.global_dimension,
    }


def theory_from_json(obj: dict) -> TheoryData:
    t = build_theory(int(obj["N"]))
    S, T = matrix_from_json(obj["S"]), matrix_from_json(obj["T"])
    if not (np.all(S == t.S) and np.all(T == t.T)):
        raise InvalidInput("stored S/T tables do not match D(Z_N) data")
    return t


def _label_json(a: AnyonLabel) -> list[int]:
    return list(a.as_pair())


def space_json(space: GroundSpace | ProductSpace) -> dict:
    if isinstance(space, ProductSpace):
        return {
            "schema": SCHEMA,
            "kind": "product_space",
            "N": space.theory.n,
            "factors": [space_json(f) for f in space.factors],
            "dim": space.dim,
        }
    return {
        "schema": SCHEMA,
        "kind": "space",
        "N": space.theory.n,
        "boundaries": [b.key for b in space.boundaries],
        "boundary_names": [b.name for b in space.boundaries],
        "dim": space.dim,
        "basis": [[_label_json(a) for a in lab] for lab in space.basis],
        "basis_order": "lexicographic in the duals of a_1..a_(n-1), each by (e, m) exponents",
    }


def space_from_json(obj: dict) -> GroundSpace | ProductSpace:
    if obj.get("kind") == "product_space":
        return ProductSpace(tuple(space_from_json(f) for f in obj["factors"]))
    t = build_theory(int(obj["N"]))
    space = build_ground_space([lagrangian_by_key(t, k) for k in obj["boundaries"]])
    stored = [tuple(tuple(x) for x in lab) for lab in obj.get("basis", [])]
    if stored and stored != [tuple(a.as_pair() for a in lab) for lab in space.basis]:
        raise InvalidInput("stored basis disagrees with the rebuilt ground space")
    return space


def operator_json(op: OperatorMatrix) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "operator",
        "provenance": op.provenance,
        "space": space_json(op.space),
        "dim": op.dim,
        "entries": matrix_json(op.entries),
    }


def operator_from_json(obj: dict) -> OperatorMatrix:
    return OperatorMatrix(space_from_json(obj["space"]), matrix_from_json(obj["entries"]), obj["provenance"])


def gate_json(g: CompiledGate) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "gate",
        "name": g.name,
        "phase": g.phase.to_json(),
        "recipe": [s.to_json() for s in g.recipe],
    }
    if g.notes:
        out["notes"] = g.notes
    if g.is_measurement:
        out["space"] = space_json(g.measurement.projector.space)
        out["projector"] = matrix_json(g.measurement.projector.entries)
        out["complement"] = matrix_json(g.measurement.complement.entries)
    else:
        out["space"] = space_json(g.matrix.space)
        out["matrix"] = matrix_json(g.matrix.entries)
    return out


def gate_pretty(g: CompiledGate) -> str:
    head = f"{g.name} on {g.space.describe()}  recipe: " + " ; ".join(str(s) for s in g.recipe)
    if g.is_measurement:
        return "\n".join(
            [
                head,
                "projector:",
                pretty_matrix(g.measurement.projector.entries),
                "complement:",
                pretty_matrix(g.measurement.complement.entries),
            ]
        )
    phase = "" if g.phase == 1 else f"\nrecipe product = ({g.phase.pretty()}) * matrix"
    return head + phase + "\n" + pretty_matrix(g.matrix.entries)
