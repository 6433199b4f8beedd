"""State-vector simulation of qudit circuits with mid-circuit measurement.

Circuit JSON (schema ``gbl/1``)::

    {"schema": "gbl/1",
     "registers": [{"name": "ctrl", "dim": 3, "boundary": "e"},
                   {"name": "anc", "dim": 3, "boundary": "m", "ancilla": true}],
     "instructions": [
        {"gate": "H3", "on": ["anc"]},
        {"gate": "SUM3", "on": ["anc", "ctrl"], "power": 2},
        {"measure": "anc", "basis": "charge", "bind": "mout"},
        {"if": "mout", "eq": 1, "gate": "X3", "on": ["ctrl"]}]}

Gates: X3, Z3, H3, Q3 on one register, SUM3 and CZ3 on two (control first).
``power`` may be negative (adjoint).  Measurement bases: ``charge`` (outcome
= basis index of the register), ``M`` (0 = span{|0>}, 1 = complement) and
``tcm`` with ``charge`` and ``curve`` keys (0 = projector, 1 = complement).
Ancilla registers start in ``|0>`` and are not part of the input.

Per-shot random streams come from ``numpy.random.SeedSequence(seed).spawn``,
so shot ``k`` depends only on ``(seed, k)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .charge import CurveLabel, charge_projector
from .cyclotomic import ONE, Cyclotomic, as_cyclotomic, omega, sqrt_rational
from .errors import CircuitError, InvalidInput
from .gates import clock, controlled_z, hadamard, qutrit_space, shift, sum_gate
from .linalg import dagger, diag, identity, matmul, scalar_multiple, scale, to_complex, zeros

__all__ = [
    "Register",
    "Instruction",
    "Circuit",
    "ShotRecord",
    "RunRecord",
    "ChannelResult",
    "run",
    "channel_matrix",
    "sum_protocol_circuit",
    "SCHEMA",
]

SCHEMA = "gbl/1"
MAX_REGISTERS = 5
_ARITY = {"X3": 1, "Z3": 1, "H3": 1, "Q3": 1, "SUM3": 2, "CZ3": 2}
_BASES = ("charge", "M", "tcm")


@dataclass(frozen=True)
class Register:
    name: str
    dim: int = 3
    boundary: str = "e"
    ancilla: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "dim": self.dim, "boundary": self.boundary}
        if self.ancilla:
            out["ancilla"] = True
        return out


@dataclass(frozen=True)
class Instruction:
    kind: str  # gate | measure | cond
    gate: str | None = None
    on: tuple[str, ...] = ()
    power: int = 1
    basis: str = "charge"
    bind: str | None = None
    var: str | None = None
    eq: int | None = None
    charge: int | None = None
    curve: str | None = None

    def to_json(self) -> dict:
        if self.kind == "measure":
            out: dict[str, Any] = {"measure": self.on[0], "basis": self.basis, "bind": self.bind}
            if self.basis == "tcm":
                out["charge"] = self.charge
                out["curve"] = self.curve
            return out
        out = {}
        if self.kind == "cond":
            out = {"if": self.var, "eq": self.eq}
        out.update({"gate": self.gate, "on": list(self.on)})
        if self.power != 1:
            out["power"] = self.power
        return out


def _parse_instruction(obj: Any, index: int) -> Instruction:
    if not isinstance(obj, dict):
        raise CircuitError("instruction must be an object", index)
    if "measure" in obj:
        basis = obj.get("basis", "charge")
        if basis not in _BASES:
            raise CircuitError(f"unknown measurement basis {basis!r}", index)
        bind = obj.get("bind")
        if not isinstance(bind, str) or not bind:
            raise CircuitError("measurement needs a 'bind' variable name", index)
        charge, curve = obj.get("charge"), obj.get("curve")
        if basis == "tcm" and (not isinstance(charge, int) or not isinstance(curve, str)):
            raise CircuitError("tcm measurement needs integer 'charge' and string 'curve'", index)
        return Instruction("measure", on=(obj["measure"],), basis=basis, bind=bind, charge=charge, curve=curve)
    if "gate" not in obj:
        raise CircuitError("instruction needs 'gate' or 'measure'", index)
    on = obj.get("on")
    if isinstance(on, str):
        on = [on]
    if not isinstance(on, list) or not all(isinstance(x, str) for x in on):
        raise CircuitError("'on' must be a list of register names", index)
    power = obj.get("power", 1)
    if not isinstance(power, int) or isinstance(power, bool):
        raise CircuitError("'power' must be an integer", index)
    if "if" in obj:
        eq = obj.get("eq")
        if not isinstance(eq, int):
            raise CircuitError("conditional needs an integer 'eq'", index)
        return Instruction("cond", gate=obj["gate"], on=tuple(on), power=power, var=obj["if"], eq=eq)
    return Instruction("gate", gate=obj["gate"], on=tuple(on), power=power)


@dataclass(frozen=True)
class Circuit:
    registers: tuple[Register, ...]
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    # -- construction ------------------------------------------------------
    @classmethod
    def from_json(cls, obj: dict) -> "Circuit":
        if not isinstance(obj, dict):
            raise CircuitError("circuit must be a JSON object")
        schema = obj.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise CircuitError(f"unsupported schema {schema!r}, expected {SCHEMA!r}")
        regs = []
        for r in obj.get("registers", []):
            if not isinstance(r, dict) or "name" not in r:
                raise CircuitError("each register needs a name")
            regs.append(
                Register(r["name"], int(r.get("dim", 3)), r.get("boundary", "e"), bool(r.get("ancilla", False)))
            )
        ins = [_parse_instruction(x, i) for i, x in enumerate(obj.get("instructions", []))]
        return cls(tuple(regs), tuple(ins))

    @classmethod
    def load(cls, path: str | Path) -> "Circuit":
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CircuitError(f"invalid JSON: {exc}") from None
        return cls.from_json(obj)

    def instruction_json(self) -> list[dict]:
        return [i.to_json() for i in self.instructions]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "registers": [r.to_json() for r in self.registers],
            "instructions": self.instruction_json(),
        }

    # -- structure ---------------------------------------------------------
    @property
    def names(self) -> list[str]:
        return [r.name for r in self.registers]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.registers)

    @property
    def data_registers(self) -> list[int]:
        return [k for k, r in enumerate(self.registers) if not r.ancilla]

    @property
    def data_dim(self) -> int:
        return math.prod(self.registers[k].dim for k in self.data_registers)

    def reg_index(self, name: str) -> int:
        return self.names.index(name)

    def validate(self) -> None:
        names = self.names
        if not self.registers:
            raise CircuitError("circuit has no registers")
        if len(self.registers) > MAX_REGISTERS:
            raise CircuitError(f"at most {MAX_REGISTERS} registers are supported")
        if len(set(names)) != len(names):
            raise CircuitError("register names must be unique")
        for r in self.registers:
            if r.dim < 2:
                raise CircuitError(f"register {r.name!r} has dimension {r.dim} < 2")
            if r.boundary not in ("e", "m"):
                raise CircuitError(f"register {r.name!r} has unknown boundary {r.boundary!r}")
        bound: set[str] = set()
        for i, ins in enumerate(self.instructions):
            for reg in ins.on:
                if reg not in names:
                    raise CircuitError(f"unknown register {reg!r}", i)
            if ins.kind == "measure":
                dim = self.registers[self.reg_index(ins.on[0])].dim
                if ins.basis in ("M", "tcm") and dim != 3:
                    raise CircuitError(f"{ins.basis} measurement needs a qutrit", i)
                if ins.basis == "tcm":
                    try:
                        CurveLabel.parse(ins.curve)
                    except Exception as exc:
                        raise CircuitError(str(exc), i) from None
                bound.add(ins.bind)
                continue
            if ins.gate not in _ARITY:
                raise CircuitError(f"unknown gate {ins.gate!r}; known: {', '.join(_ARITY)}", i)
            if len(ins.on) != _ARITY[ins.gate]:
                raise CircuitError(f"{ins.gate} acts on {_ARITY[ins.gate]} register(s), got {len(ins.on)}", i)
            if len(set(ins.on)) != len(ins.on):
                raise CircuitError(f"{ins.gate} needs distinct registers", i)
            dims = {self.registers[self.reg_index(r)].dim for r in ins.on}
            if len(dims) != 1:
                raise CircuitError(f"{ins.gate} needs registers of equal dimension", i)
            if ins.gate == "Q3" and dims != {3}:
                raise CircuitError("Q3 needs a qutrit", i)
            if ins.kind == "cond" and ins.var not in bound:
                raise CircuitError(f"outcome variable {ins.var!r} used before it is bound", i)


# ---------------------------------------------------------------------------
# gate and measurement matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gate_matrix(name: str, d: int, power: int) -> np.ndarray:
    base = {
        "X3": shift,
        "Z3": clock,
        "H3": hadamard,
        "SUM3": sum_gate,
        "CZ3": controlled_z,
    }
    if name == "Q3":
        u = diag([1, 1, omega(3)])
    else:
        u = base[name](d)
    if power < 0:
        u, power = dagger(u), -power
    out = identity(u.shape[0])
    for _ in range(power):
        out = matmul(u, out)
    return out


@lru_cache(maxsize=None)
def _measurement_ops(basis: str, d: int, boundary: str, charge: int | None, curve: str | None):
    """Projectors of one measurement, indexed by outcome."""
    if basis == "charge":
        return tuple(diag([1 if k == r else 0 for k in range(d)]) for r in range(d))
    if basis == "M":
        p = diag([1, 0, 0])
        return (p, identity(3) - p)
    meas = charge_projector(qutrit_space(boundary, 3), charge, CurveLabel.parse(curve))
    return (meas.projector.entries, meas.complement.entries)


def _apply(state: np.ndarray, u: np.ndarray, axes: Sequence[int], exact: bool) -> np.ndarray:
    moved = np.moveaxis(state, list(axes), list(range(len(axes))))
    shape = moved.shape
    k = math.prod(shape[: len(axes)])
    flat = moved.reshape(k, -1)
    out = matmul(u, flat) if exact else _to_complex_cached(u) @ flat
    return np.moveaxis(out.reshape(shape), list(range(len(axes))), list(axes))


_COMPLEX_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _to_complex_cached(u: np.ndarray) -> np.ndarray:
    hit = _COMPLEX_CACHE.get(id(u))
    if hit is not None and hit[0] is u:
        return hit[1]
    c = to_complex(u)
    _COMPLEX_CACHE[id(u)] = (u, c)
    return c


def _norm2(state: np.ndarray, exact: bool):
    if exact:
        acc = Cyclotomic(0)
        for x in state.flat:
            if not x.is_zero():
                acc = acc + x.abs2()
        return acc
    return float(np.vdot(state, state).real)


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------

def _basis_state(circ: Circuit, labels: Sequence[int], exact: bool) -> np.ndarray:
    dims = circ.dims
    full = list(labels)
    if len(full) == len(circ.data_registers) and len(full) != len(dims):
        it = iter(full)
        full = [next(it) if not r.ancilla else 0 for r in circ.registers]
    if len(full) != len(dims):
        raise InvalidInput(f"basis label {tuple(labels)} does not match {len(dims)} registers")
    for k, (c, d) in enumerate(zip(full, dims)):
        if not 0 <= c < d:
            raise InvalidInput(f"label {c} out of range for register {circ.registers[k].name!r}")
    if exact:
        state = np.empty(dims, dtype=object)
        state.fill(Cyclotomic(0))
        state[tuple(full)] = ONE
    else:
        state = np.zeros(dims, dtype=complex)
        state[tuple(full)] = 1.0
    return state


def _vector_state(circ: Circuit, vec: np.ndarray, exact: bool) -> np.ndarray:
    dims = circ.dims
    data = circ.data_registers
    if vec.size == math.prod(dims):
        full = vec.reshape(dims)
    elif vec.size == circ.data_dim:
        full_shape = dims
        if exact:
            full = np.empty(full_shape, dtype=object)
            full.fill(Cyclotomic(0))
        else:
            full = np.zeros(full_shape, dtype=complex)
        data_shape = tuple(dims[k] for k in data)
        sub = vec.reshape(data_shape)
        for idx in iproduct(*(range(d) for d in data_shape)):
            full_idx = [0] * len(dims)
            for k, v in zip(data, idx):
                full_idx[k] = v
            full[tuple(full_idx)] = sub[idx]
    else:
        raise InvalidInput(f"amplitude vector of length {vec.size} does not fit the circuit")
    if exact:
        return np.vectorize(as_cyclotomic, otypes=[object])(full)
    return full.astype(complex)


def _initial_state(circ: Circuit, inp, exact: bool) -> np.ndarray:
    if inp is None:
        inp = [0] * len(circ.data_registers)
    if isinstance(inp, str):
        inp = [int(x) for x in inp.replace("|", "").replace(">", "").split(",") if x.strip()]
    if isinstance(inp, dict):
        inp = [inp.get(r.name, 0) for r in circ.registers]
    arr = np.asarray(inp, dtype=object if exact else None)
    if arr.dtype == object and all(isinstance(x, (int, np.integer)) for x in arr.flat) and arr.size <= len(circ.dims):
        return _basis_state(circ, [int(x) for x in arr.flat], exact)
    if arr.dtype.kind in "iu" and arr.size <= len(circ.dims):
        return _basis_state(circ, [int(x) for x in arr.flat], exact)
    state = _vector_state(circ, arr, exact)
    n2 = _norm2(state, exact)
    if exact and n2 != 1:
        raise InvalidInput("exact input state is not normalized")
    if not exact and abs(n2 - 1) > 1e-10:
        raise InvalidInput("input state is not normalized within 1e-10")
    return state


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

def _branch_states(circ: Circuit, state: np.ndarray, ins: Instruction, exact: bool):
    k = circ.reg_index(ins.on[0])
    reg = circ.registers[k]
    ops = _measurement_ops(ins.basis, reg.dim, reg.boundary, ins.charge, ins.curve)
    return [_apply(state, p, [k], exact) for p in ops]


def _unitary_step(circ: Circuit, state: np.ndarray, ins: Instruction, exact: bool) -> np.ndarray:
    axes = [circ.reg_index(r) for r in ins.on]
    d = circ.registers[axes[0]].dim
    return _apply(state, _gate_matrix(ins.gate, d, ins.power), axes, exact)


@dataclass(frozen=True)
class ShotRecord:
    outcomes: dict
    probabilities: tuple[tuple[float, ...], ...]
    final_label: tuple[int, ...] | None
    state: Any = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "outcomes": dict(sorted(self.outcomes.items())),
            "probabilities": [list(p) for p in self.probabilities],
            "final_label": list(self.final_label) if self.final_label is not None else None,
        }
        if self.state is not None:
            out["state"] = self.state
        return out


@dataclass(frozen=True)
class RunRecord:
    seed: int | None
    shots: tuple[ShotRecord, ...]
    registers: tuple[str, ...]
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "seed": self.seed,
            "exact": self.exact,
            "registers": list(self.registers),
            "shots": [s.to_json() for s in self.shots],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def final_labels(self) -> list[tuple[int, ...] | None]:
        return [s.final_label for s in self.shots]


def _state_json(state: np.ndarray, exact: bool) -> list:
    if exact:
        return [str(x) for x in state.flat]
    return [[float(x.real), float(x.imag)] for x in state.flat]


def _definite_label(state: np.ndarray, exact: bool) -> tuple[int, ...] | None:
    if exact:
        nz = [idx for idx, x in np.ndenumerate(state) if not x.is_zero()]
    else:
        nz = [idx for idx, x in np.ndenumerate(state) if abs(x) > 1e-10]
    return tuple(int(i) for i in nz[0]) if len(nz) == 1 else None


def _run_shot(circ: Circuit, state: np.ndarray, rng: np.random.Generator, exact: bool, emit_state: bool) -> ShotRecord:
    outcomes: dict[str, int] = {}
    probs_log = []
    for i, ins in enumerate(circ.instructions):
        if ins.kind == "cond":
            if outcomes[ins.var] != ins.eq:
                continue
            state = _unitary_step(circ, state, ins, exact)
        elif ins.kind == "gate":
            state = _unitary_step(circ, state, ins, exact)
        else:
            branches = _branch_states(circ, state, ins, exact)
            weights = [_norm2(b, exact) for b in branches]
            probs = [float(w) for w in weights]
            total = sum(probs)
            if abs(total - 1) > 1e-10:
                raise CircuitError(f"branch probabilities sum to {total}", i)
            r = int(np.searchsorted(np.cumsum(probs), rng.random() * total, side="right"))
            r = min(r, len(probs) - 1)
            while probs[r] < 1e-12:
                r = (r + 1) % len(probs)
            state = branches[r]
            if exact:
                w = weights[r]
                if not w.is_rational():
                    raise CircuitError("exact branch weight is irrational; run without exact", i)
                state = np.vectorize(lambda x: x * sqrt_rational(w.to_fraction()).inverse(), otypes=[object])(state)
            else:
                state = state / math.sqrt(probs[r])
            outcomes[ins.bind] = r
            probs_log.append(tuple(probs))
    return ShotRecord(
        outcomes,
        tuple(probs_log),
        _definite_label(state, exact),
        _state_json(state, exact) if emit_state else None,
    )


def run(circ: Circuit, input=None, shots: int = 1, seed: int | None = None, exact: bool = False, emit_state: bool = False) -> RunRecord:
    """Execute ``shots`` independent runs from the same input."""
    if shots < 0:
        raise InvalidInput("shots must be non-negative")
    start = _initial_state(circ, input, exact)
    children = np.random.SeedSequence(seed).spawn(shots)
    records = tuple(
        _run_shot(circ, start, np.random.default_rng(child), exact, emit_state) for child in children
    )
    return RunRecord(seed, records, tuple(circ.names), exact)


# ---------------------------------------------------------------------------
# channel extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChannelResult:
    unitary: bool
    matrix: np.ndarray | None = None
    witness: dict | None = None
    branches: dict = field(default_factory=dict, repr=False)


def _enumerate(circ: Circuit, state: np.ndarray, start: int, outcomes: dict, key: tuple, out: dict) -> None:
    for i in range(start, len(circ.instructions)):
        ins = circ.instructions[i]
        if ins.kind == "cond":
            if outcomes[ins.var] == ins.eq:
                state = _unitary_step(circ, state, ins, True)
        elif ins.kind == "gate":
            state = _unitary_step(circ, state, ins, True)
        else:
            for r, b in enumerate(_branch_states(circ, state, ins, True)):
                if all(x.is_zero() for x in b.flat):
                    continue
                _enumerate(circ, b, i + 1, {**outcomes, ins.bind: r}, key + (r,), out)
            return
    out[key] = state


def _branch_blocks(circ: Circuit, inputs: list[np.ndarray]) -> dict:
    """branch -> {ancilla config -> data block (columns = inputs)}."""
    data = circ.data_registers
    anc = [k for k in range(len(circ.registers)) if k not in data]
    dims = circ.dims
    anc_configs = list(iproduct(*(range(dims[k]) for k in anc)))
    data_configs = list(iproduct(*(range(dims[k]) for k in data)))
    cols: dict[tuple, list] = {}
    for j, vec in enumerate(inputs):
        finals: dict = {}
        _enumerate(circ, vec, 0, {}, (), finals)
        for key, st in finals.items():
            cols.setdefault(key, [None] * len(inputs))[j] = st
    blocks: dict = {}
    for key, states in cols.items():
        per_anc = {}
        for a in anc_configs:
            block = zeros(len(data_configs), len(inputs))
            for j, st in enumerate(states):
                if st is None:
                    continue
                for i, dc in enumerate(data_configs):
                    idx = [0] * len(dims)
                    for k, v in zip(data, dc):
                        idx[k] = v
                    for k, v in zip(anc, a):
                        idx[k] = v
                    block[i, j] = st[tuple(idx)]
            if not all(x.is_zero() for x in block.flat):
                per_anc[a] = block
        blocks[key] = per_anc
    return blocks


def _witness(circ: Circuit, blocks: dict) -> dict:
    """An input whose branches end in different (normalized) data states."""
    d = circ.data_dim
    candidates = [("basis", [1 if k == j else 0 for k in range(d)]) for j in range(d)]
    candidates.append(("uniform", [1] * d))
    candidates += [("pair", [1 if k in (i, j) else 0 for k in range(d)]) for i in range(d) for j in range(i + 1, d)]
    for kind, v in candidates:
        vec = np.array([as_cyclotomic(x) for x in v], dtype=object)
        outs = []
        for key, per_anc in blocks.items():
            for a, block in per_anc.items():
                o = matmul(block, vec)
                if not all(x.is_zero() for x in o.flat):
                    outs.append((key, a, o))
        for (k1, a1, o1), (k2, a2, o2) in zip(outs, outs[1:]):
            if scalar_multiple(o2, o1) is None:
                return {
                    "input": v,
                    "kind": kind,
                    "branches": {str(k1): [str(x) for x in o1], str(k2): [str(x) for x in o2]},
                }
    return {"input": None, "kind": "non-isometric"}


def channel_matrix(circ: Circuit) -> ChannelResult:
    """Exact data-register channel, if every branch applies the same unitary.

    Ancilla registers are dropped once they hold a definite basis state.  The
    channel is unitary when every branch block is a scalar multiple of one
    unitary ``U``; then ``U`` is returned, normalized so its reference block
    has positive scale.
    """
    d = circ.data_dim
    inputs = []
    for j in range(d):
        vec = np.zeros(d, dtype=object)
        for k in range(d):
            vec[k] = ONE if k == j else Cyclotomic(0)
        inputs.append(_vector_state(circ, vec, True))
    blocks = _branch_blocks(circ, inputs)
    ref = next(b for per in blocks.values() for b in per.values())
    gram = matmul(dagger(ref), ref)
    lam = scalar_multiple(gram, identity(d))
    if lam is None or not lam.is_rational():
        return ChannelResult(False, witness=_witness(circ, blocks), branches=blocks)
    u = scale(ref, sqrt_rational(lam.to_fraction()).inverse())
    for per in blocks.values():
        for b in per.values():
            if scalar_multiple(b, u) is None:
                return ChannelResult(False, witness=_witness(circ, blocks), branches=blocks)
    return ChannelResult(True, matrix=u, branches=blocks)


# ---------------------------------------------------------------------------
# the ancilla-mediated SUM between two e-qutrits
# ---------------------------------------------------------------------------

def sum_protocol_circuit(correct: bool = True) -> Circuit:
    """SUM(ctrl -> tgt) for two e-qutrits through an m-type ancilla.

    The ancilla is prepared in H|0>, two mixed SUMs add it twice into the
    target, one adds the control into it, and its charge ``j`` is measured.
    The target then carries ``t + c + 2 j``; X^j on the target removes the
    ``2 j``.
    """
    regs = (
        Register("ctrl", 3, "e"),
        Register("tgt", 3, "e"),
        Register("anc", 3, "m", ancilla=True),
    )
    ins = [
        Instruction("gate", gate="H3", on=("anc",)),
        Instruction("gate", gate="SUM3", on=("anc", "tgt")),
        Instruction("gate", gate="SUM3", on=("anc", "tgt")),
        Instruction("gate", gate="SUM3", on=("ctrl", "anc")),
        Instruction("measure", on=("anc",), basis="charge", bind="mout"),
    ]
    if correct:
        ins += [
            Instruction("cond", gate="X3", on=("tgt",), var="mout", eq=1),
            Instruction("cond", gate="X3", on=("tgt",), power=2, var="mout", eq=2),
        ]
    return Circuit(regs, tuple(ins))
