"""The metaplectic qutrit gate set on D(Z_3) boundary qutrits, built from
tunneling, loop, braiding, and charge-projection primitives.

A qutrit is a pair of holes with equal boundary type.  Its basis ``|c>``,
``c = 0, 1, 2``, carries charge ``c`` (e^c or m^c) on the second hole.  Two
qutrits on the space ``[e, e, m, m]`` use the row-major index ``3 c1 + c2``.

Each :class:`CompiledGate` carries a recipe: primitive steps in the order they
are applied.  ``recipe_matrix`` multiplies them back together (latest step on
the left), and the gate matrix equals that product times ``phase``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Any

import numpy as np

from .boundary import GroundSpace, ProductSpace, build_ground_space, lagrangian_by_key
from .braid import BraidGenerator, braid_squared
from .charge import ChargeMeasurement, CurveLabel, charge_projector, split_double_layer
from .cyclotomic import ONE, Cyclotomic, omega
from .errors import InvalidInput
from .linalg import (
    dagger,
    diag,
    equal,
    identity,
    kron,
    matmul,
    scalar_multiple,
    zeros,
)
from .theory import AnyonLabel, TheoryData, build_theory
from .wilson import OperatorMatrix, loop, tunnel

__all__ = [
    "RecipeStep",
    "CompiledGate",
    "qutrit_space",
    "two_qutrit_space",
    "hadamard",
    "shift",
    "clock",
    "sum_gate",
    "controlled_z",
    "gate_X3",
    "gate_Z3",
    "gate_H3",
    "gate_CZ3",
    "gate_SUM3_mixed",
    "gate_SUM3_ee",
    "gate_Q3",
    "gate_M",
    "compile_gate",
    "recipe_matrix",
    "GATE_NAMES",
]

GATE_NAMES = ("H3", "SUM3", "SUM3_ee", "CZ3", "Q3", "X3", "Z3", "M")


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _theory(n: int) -> TheoryData:
    return build_theory(n)


@lru_cache(maxsize=None)
def qutrit_space(kind: str = "e", n: int = 3) -> GroundSpace:
    """Two holes of boundary type ``kind``."""
    b = lagrangian_by_key(_theory(n), kind)
    return build_ground_space([b, b])


@lru_cache(maxsize=None)
def two_qutrit_space(n: int = 3) -> GroundSpace:
    """Holes [e, e, m, m]: an e-qutrit on (1, 2) and an m-qutrit on (3, 4)."""
    t = _theory(n)
    e, m = lagrangian_by_key(t, "e"), lagrangian_by_key(t, "m")
    return build_ground_space([e, e, m, m])


# ---------------------------------------------------------------------------
# closed-form qudit matrices (used as oracles and by the simulator)
# ---------------------------------------------------------------------------

def hadamard(d: int = 3) -> np.ndarray:
    """Normalized single-layer S matrix, w^(x a) / sqrt(d)."""
    out = zeros(d)
    inv = Cyclotomic(1, 1, 1, d)
    for x, a in iproduct(range(d), repeat=2):
        out[x, a] = omega(d, x * a) * inv
    return out


def shift(d: int = 3) -> np.ndarray:
    """X |c> = |c + 1>."""
    out = zeros(d)
    for c in range(d):
        out[(c + 1) % d, c] = ONE
    return out


def clock(d: int = 3) -> np.ndarray:
    """Z |c> = w^c |c>."""
    return diag([omega(d, c) for c in range(d)])


def sum_gate(d: int = 3) -> np.ndarray:
    """|i, j> -> |i, i + j>."""
    out = zeros(d * d)
    for i, j in iproduct(range(d), repeat=2):
        out[i * d + (i + j) % d, i * d + j] = ONE
    return out


def controlled_z(d: int = 3) -> np.ndarray:
    """|i, j> -> w^(i j) |i, j>."""
    return diag([omega(d, i * j) for i, j in iproduct(range(d), repeat=2)])


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecipeStep:
    """One primitive invocation.

    ``primitive`` is one of tunnel, loop, braid, tcm, dehn, H3, circuit.
    ``register`` selects the qutrit for register-level primitives (H3, dehn,
    tcm) on multi-qutrit gates.  ``adjoint`` applies the dagger.
    """

    primitive: str
    args: dict = field(default_factory=dict)
    register: int | None = None
    adjoint: bool = False

    def to_json(self) -> dict:
        out: dict[str, Any] = {"primitive": self.primitive, **self.args}
        if self.register is not None:
            out["register"] = self.register
        if self.adjoint:
            out["adjoint"] = True
        return out

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.args.items())
        reg = "" if self.register is None else f" on q{self.register}"
        dag = "^dagger" if self.adjoint else ""
        return f"{self.primitive}{dag}({args}){reg}"


@dataclass(frozen=True, eq=False)
class CompiledGate:
    name: str
    matrix: OperatorMatrix | None
    recipe: tuple[RecipeStep, ...]
    phase: Cyclotomic = ONE
    measurement: ChargeMeasurement | None = None
    notes: str = ""

    @property
    def is_measurement(self) -> bool:
        return self.measurement is not None

    @property
    def space(self):
        return self.matrix.space if self.matrix is not None else self.measurement.projector.space


def _anyon(t: TheoryData, pair) -> AnyonLabel:
    return AnyonLabel(pair[0], pair[1], t.n)


def _embed(single: np.ndarray, register: int | None, dims: tuple[int, ...]) -> np.ndarray:
    if len(dims) == 1:
        return single
    if register is None:
        raise InvalidInput("register-level primitive needs a register on a multi-qutrit gate")
    out = np.ones((1, 1), dtype=object)
    out[0, 0] = ONE
    for r, d in enumerate(dims):
        out = kron(out, single if r == register else identity(d))
    return out


def _space_dims(space) -> tuple[int, ...]:
    if isinstance(space, ProductSpace):
        return space.dims
    if space.n_holes == 4:
        return (space.theory.n, space.theory.n)
    return (space.dim,)


def _step_matrix(step: RecipeStep, space) -> np.ndarray:
    t = space.theory
    dims = _space_dims(space)
    p = step.primitive
    if p == "tunnel":
        m = tunnel(space, _anyon(t, step.args["anyon"]), step.args["from"], step.args["to"]).entries
    elif p == "loop":
        m = loop(space, _anyon(t, step.args["anyon"]), step.args["hole"]).entries
    elif p == "braid":
        m = braid_squared(space, BraidGenerator(*step.args["pair"])).entries
    elif p == "H3":
        m = _embed(hadamard(t.n), step.register, dims)
    elif p == "dehn":
        m = _embed(split_double_layer(t).T(), step.register, dims)
    elif p == "tcm":
        kind = step.args.get("boundary", "e")
        meas = charge_projector(
            qutrit_space(kind, t.n), step.args["charge"], CurveLabel.parse(step.args["curve"])
        )
        branch = meas.complement if step.args.get("branch") == "complement" else meas.projector
        m = _embed(branch.entries, step.register, dims)
    else:
        raise InvalidInput(f"primitive {p!r} has no standalone matrix")
    return dagger(m) if step.adjoint else m


def recipe_matrix(recipe, space) -> np.ndarray:
    """Product of the recipe's step matrices, first step rightmost."""
    out = identity(space.dim)
    for step in recipe:
        out = matmul(_step_matrix(step, space), out)
    return out


def _compiled(name: str, space, recipe: list[RecipeStep], target: np.ndarray | None = None, notes: str = "") -> CompiledGate:
    """Build a gate from its recipe; when ``target`` is given, record the phase."""
    product = recipe_matrix(recipe, space)
    matrix = product if target is None else target
    phase = ONE
    if target is not None:
        lam = scalar_multiple(product, target)
        if lam is None:
            raise AssertionError(f"{name}: recipe does not reproduce the target matrix")
        phase = lam
    return CompiledGate(name, OperatorMatrix(space, matrix, f"gate {name}"), tuple(recipe), phase, notes=notes)


# ---------------------------------------------------------------------------
# gate set
# ---------------------------------------------------------------------------

def gate_X3(n: int = 3) -> CompiledGate:
    sp = qutrit_space("e", n)
    return _compiled("X3", sp, [RecipeStep("tunnel", {"anyon": (1, 0), "from": 1, "to": 2})])


def gate_Z3(n: int = 3) -> CompiledGate:
    """Z = loop of m around hole 1, diag(1, w, w^2)."""
    sp = qutrit_space("e", n)
    return _compiled("Z3", sp, [RecipeStep("loop", {"anyon": (0, 1), "hole": 1})], clock(n))


def gate_H3(n: int = 3) -> CompiledGate:
    sp = qutrit_space("e", n)
    return _compiled(
        "H3",
        sp,
        [RecipeStep("H3")],
        notes="H3 is shipped as a primitive matrix (the normalized single-layer S matrix)",
    )


def gate_CZ3(n: int = 3) -> CompiledGate:
    sp = two_qutrit_space(n)
    return _compiled("CZ3", sp, [RecipeStep("braid", {"pair": (2, 3)})])


def gate_SUM3_mixed(n: int = 3) -> CompiledGate:
    """SUM from the e-qutrit (control) into the m-qutrit (target).

    Uses CZ = (I x H) SUM (I x H^dagger), i.e. SUM = (I x H^dagger) CZ (I x H).
    """
    sp = two_qutrit_space(n)
    recipe = [
        RecipeStep("H3", register=1),
        RecipeStep("braid", {"pair": (2, 3)}),
        RecipeStep("H3", register=1, adjoint=True),
    ]
    return _compiled("SUM3", sp, recipe, sum_gate(n))


def gate_Q3() -> CompiledGate:
    """Q3 = diag(1, 1, w) from Dehn twists and a loop-operator Z.

    The Dehn power, Z power, and global phase are found by search.
    """
    sp = qutrit_space("e", 3)
    dehn = split_double_layer(sp.theory).T()
    z = loop(sp, AnyonLabel(0, 1, 3), 1).entries
    target = diag([1, 1, omega(3)])
    for p_dehn, p_z in iproduct(range(1, 3), range(3)):
        m = identity(3)
        for _ in range(p_dehn):
            m = matmul(dehn, m)
        for _ in range(p_z):
            m = matmul(z, m)
        if scalar_multiple(m, target) is not None:
            recipe = [RecipeStep("dehn")] * p_dehn + [RecipeStep("loop", {"anyon": (0, 1), "hole": 1})] * p_z
            return _compiled("Q3", sp, recipe, target, notes=f"dehn^{p_dehn} Z^{p_z}")
    raise AssertionError("no Dehn twist / Z combination reaches diag(1, 1, w)")


def gate_M() -> CompiledGate:
    """Coherent projection separating |0> from span{|1>, |2>}.

    Projector H^dagger P H with P the vacuum-charge projector on the arc.
    """
    sp = qutrit_space("e", 3)
    recipe = [
        RecipeStep("H3"),
        RecipeStep("tcm", {"charge": 0, "curve": "arc:1,2"}),
        RecipeStep("H3", adjoint=True),
    ]
    comp_recipe = [
        RecipeStep("H3"),
        RecipeStep("tcm", {"charge": 0, "curve": "arc:1,2", "branch": "complement"}),
        RecipeStep("H3", adjoint=True),
    ]
    p = recipe_matrix(recipe, sp)
    c = recipe_matrix(comp_recipe, sp)
    curve = CurveLabel.arc(1, 2)
    meas = ChargeMeasurement(
        0, curve, OperatorMatrix(sp, p, "gate M"), OperatorMatrix(sp, c, "gate M complement")
    )
    return CompiledGate("M", None, tuple(recipe), ONE, measurement=meas)


def gate_SUM3_ee(simulator=None) -> CompiledGate:
    """SUM between two e-qutrits through an m-type ancilla.

    The ancilla starts in H|0>, takes two SUMs into the target and one from
    the control, is measured in its charge basis with outcome ``j``, and the
    target is corrected by X^j.  ``simulator`` maps a circuit to its channel
    matrix; it defaults to :func:`gapbound.circuit.channel_matrix`.
    """
    from .circuit import channel_matrix, sum_protocol_circuit

    sim = simulator or channel_matrix
    circ = sum_protocol_circuit()
    result = sim(circ)
    if not result.unitary:
        raise AssertionError(f"SUM protocol is not unitary: witness {result.witness}")
    sp = ProductSpace((qutrit_space("e", 3), qutrit_space("e", 3)))
    recipe = tuple(RecipeStep("circuit", {"instruction": ins}) for ins in circ.instruction_json())
    op = OperatorMatrix(sp, result.matrix, "gate SUM3 (e-e, ancilla protocol)")
    if not equal(result.matrix, sum_gate(3)):
        raise AssertionError("SUM protocol channel differs from SUM3")
    return CompiledGate("SUM3_ee", op, recipe, ONE)


def compile_gate(name: str) -> CompiledGate:
    builders = {
        "X3": gate_X3,
        "Z3": gate_Z3,
        "H3": gate_H3,
        "CZ3": gate_CZ3,
        "SUM3": gate_SUM3_mixed,
        "SUM3_ee": gate_SUM3_ee,
        "Q3": gate_Q3,
        "M": gate_M,
    }
    if name not in builders:
        raise InvalidInput(f"unknown gate {name!r}; known: {', '.join(builders)}")
    return builders[name]()
