"""Wilson operator algebra, topological charge projectors, and measurement.

A charge projector onto charge ``a`` of the single-layer theory C through a
curve ``beta`` is

    P^(a) = sum_x  S~[0, a] conj(S~[x, a])  O_x(beta)

with the normalized single-layer S matrix ``S~[x, a] = w^(x a) / sqrt(N)``.
For an arc between holes ``i < j`` the operator ``O_x`` tunnels ``g^x`` along
the arc, where ``g`` generates the (cyclic) group of anyons allowed on that
arc.  For a loop around hole ``i`` it is the Wilson loop of the mirror-layer
anyon ``(x, -h x)``, ``h = (N - 1) / 2``; on an e-type pair this makes the
loop projector the charge-basis projector ``|a><a|`` on the qudit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .boundary import GroundSpace
from .cyclotomic import Cyclotomic, as_cyclotomic, omega, sqrt_rational
from .errors import InvalidCurve, InvalidInput, NotFactorizable
from .linalg import dagger, identity, matmul, scale, to_complex, zeros
from .theory import AnyonLabel, TheoryData
from .wilson import OperatorMatrix, loop, tunnel

__all__ = [
    "CurveLabel",
    "WilsonAlgebraBasis",
    "SingleLayer",
    "ChargeMeasurement",
    "wilson_basis",
    "arc_group",
    "split_double_layer",
    "charge_projector",
    "projector_family",
    "effective_hamiltonian",
    "curve_operator",
    "measure",
]


@dataclass(frozen=True, order=True)
class CurveLabel:
    """A loop around hole ``i`` (``j`` is None) or the arc from ``i`` to ``j > i``."""

    kind: str
    i: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "loop":
            if self.j is not None or self.i < 1:
                raise InvalidCurve(f"bad loop curve ({self.i}, {self.j})")
        elif self.kind == "arc":
            if self.j is None or not 1 <= self.i < self.j:
                raise InvalidCurve(f"an arc needs holes 1 <= i < j, got ({self.i}, {self.j})")
        else:
            raise InvalidCurve(f"unknown curve kind {self.kind!r}")

    @classmethod
    def loop(cls, hole: int) -> "CurveLabel":
        return cls("loop", hole)

    @classmethod
    def arc(cls, i: int, j: int) -> "CurveLabel":
        return cls("arc", i, j)

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        """'loop:2' or 'arc:1,2'."""
        kind, _, rest = text.partition(":")
        try:
            nums = [int(x) for x in rest.split(",")]
        except ValueError:
            raise InvalidCurve(f"cannot parse curve {text!r}") from None
        if kind == "loop" and len(nums) == 1:
            return cls.loop(nums[0])
        if kind == "arc" and len(nums) == 2:
            return cls.arc(*nums)
        raise InvalidCurve(f"cannot parse curve {text!r}; use loop:i or arc:i,j")

    def __str__(self) -> str:
        return f"loop:{self.i}" if self.kind == "loop" else f"arc:{self.i},{self.j}"


def _check_curve(space: GroundSpace, curve: CurveLabel) -> None:
    top = curve.i if curve.j is None else curve.j
    if top > space.n_holes:
        raise InvalidCurve(f"{curve} needs {top} holes, space has {space.n_holes}")


def arc_group(space: GroundSpace, i: int, j: int) -> list[AnyonLabel]:
    """Anyons ``a`` with ``a`` condensing on hole ``j`` and ``abar`` on hole ``i``."""
    bi, bj = space.boundary(i), space.boundary(j)
    return sorted(a for a in bj.condensed if a.dual in bi)


@dataclass(frozen=True)
class WilsonAlgebraBasis:
    space: GroundSpace
    elements: tuple[tuple[AnyonLabel, CurveLabel], ...]

    def __len__(self) -> int:
        return len(self.elements)

    def loops(self) -> list[tuple[AnyonLabel, CurveLabel]]:
        return [e for e in self.elements if e[1].kind == "loop"]

    def arcs(self) -> list[tuple[AnyonLabel, CurveLabel]]:
        return [e for e in self.elements if e[1].kind == "arc"]


def wilson_basis(space: GroundSpace) -> WilsonAlgebraBasis:
    n = space.n_holes
    elements = [(a, CurveLabel.loop(i)) for i in range(1, n + 1) for a in space.theory.labels]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            elements.extend((a, CurveLabel.arc(i, j)) for a in arc_group(space, i, j))
    return WilsonAlgebraBasis(space, tuple(elements))


def curve_operator(space: GroundSpace, a: AnyonLabel, curve: CurveLabel) -> OperatorMatrix:
    """The basis Wilson operator for ``(a, curve)``."""
    _check_curve(space, curve)
    if curve.kind == "loop":
        return loop(space, a, curve.i)
    return tunnel(space, a, curve.i, curve.j)


@dataclass(frozen=True, eq=False)
class SingleLayer:
    """Single-layer theory C in D(Z_N) = C x Cbar, for odd N.

    ``S[x, a] = w^(x a) / sqrt(N)`` and ``twists[x] = w^(h x^2)``.
    ``embed(x)`` is the anyon ``(x, h x)`` of the double; ``embed_mirror(x)``
    is ``(x, -h x)``.
    """

    n: int
    labels: tuple[int, ...]
    S: np.ndarray
    twists: tuple[Cyclotomic, ...]
    h: int

    def embed(self, x: int) -> AnyonLabel:
        return AnyonLabel(x, self.h * x, self.n)

    def embed_mirror(self, x: int) -> AnyonLabel:
        return AnyonLabel(x, -self.h * x, self.n)

    def T(self) -> np.ndarray:
        out = zeros(self.n)
        for x, t in enumerate(self.twists):
            out[x, x] = t
        return out


def split_double_layer(t: TheoryData) -> SingleLayer:
    n = t.n
    if n % 2 == 0:
        raise NotFactorizable(
            f"D(Z_{n}) has no modular Z_{n} layer: 2 is not invertible mod {n}"
        )
    h = (n - 1) // 2
    inv_sqrt = Cyclotomic(1, 1, 1, n)
    S = np.empty((n, n), dtype=object)
    for x in range(n):
        for a in range(n):
            S[x, a] = omega(n, x * a) * inv_sqrt
    twists = tuple(omega(n, h * x * x) for x in range(n))
    return SingleLayer(n, tuple(range(n)), S, twists, h)


@dataclass(frozen=True, eq=False)
class ChargeMeasurement:
    charge: int
    curve: CurveLabel
    projector: OperatorMatrix
    complement: OperatorMatrix


def _arc_generator(space: GroundSpace, curve: CurveLabel) -> AnyonLabel:
    group = arc_group(space, curve.i, curve.j)
    n = space.theory.n
    for g in group:
        if len({(g ** k) for k in range(n)}) == n:
            return g
    raise InvalidCurve(
        f"anyons allowed on {curve} form {[str(a) for a in group]}, not a cyclic group of order {n}"
    )


def _operator_family(space: GroundSpace, curve: CurveLabel, layer: SingleLayer) -> list[np.ndarray]:
    _check_curve(space, curve)
    if curve.kind == "arc":
        g = _arc_generator(space, curve)
        return [tunnel(space, g ** x, curve.i, curve.j).entries for x in layer.labels]
    return [loop(space, layer.embed_mirror(x), curve.i).entries for x in layer.labels]


def charge_projector(space: GroundSpace, a: int, curve: CurveLabel) -> ChargeMeasurement:
    layer = split_double_layer(space.theory)
    if not 0 <= a < layer.n:
        raise InvalidInput(f"charge {a} is not a label of the single layer (0..{layer.n - 1})")
    ops = _operator_family(space, curve, layer)
    p = zeros(space.dim)
    for x, o in zip(layer.labels, ops):
        coeff = layer.S[0, a] * layer.S[x, a].conjugate()
        p = p + scale(o, coeff)
    comp = identity(space.dim) - p
    return ChargeMeasurement(
        a,
        curve,
        OperatorMatrix(space, p, f"tcm charge {a} on {curve}"),
        OperatorMatrix(space, comp, f"tcm complement charge {a} on {curve}"),
    )


def projector_family(space: GroundSpace, curve: CurveLabel) -> list[ChargeMeasurement]:
    n = space.theory.n
    return [charge_projector(space, a, curve) for a in range(n)]


def effective_hamiltonian(
    space: GroundSpace, a: AnyonLabel, curve: CurveLabel, t
) -> OperatorMatrix:
    """H = -t W - conj(t) W^dagger for the Wilson operator of ``(a, curve)``."""
    t = as_cyclotomic(t)
    w = curve_operator(space, a, curve).entries
    h = scale(w, -t) + scale(dagger(w), -t.conjugate())
    return OperatorMatrix(space, h, f"hamiltonian -t W_{a}({curve}) + h.c., t={t}")


def _norm2_exact(v: np.ndarray) -> Cyclotomic:
    acc = Cyclotomic(0)
    for x in v:
        acc = acc + x.abs2()
    return acc


def measure(state, m: ChargeMeasurement, seed=None, rng: np.random.Generator | None = None):
    """Sample P vs 1 - P.  Returns ``(outcome, post_state, probabilities)``.

    Outcome 0 is the projector branch, 1 the complement.  Object arrays of
    :class:`Cyclotomic` take the exact path; anything else is treated as a
    complex vector.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    vec = np.asarray(state)
    dim = m.projector.dim
    if vec.shape != (dim,):
        raise InvalidInput(f"state has shape {vec.shape}, expected ({dim},)")
    exact = vec.dtype == object
    ops = (m.projector.entries, m.complement.entries)

    if exact:
        vec = np.array([as_cyclotomic(x) for x in vec], dtype=object)
        if _norm2_exact(vec) != 1:
            raise InvalidInput("exact state is not normalized")
        branches = [matmul(op, vec) for op in ops]
        probs_exact = [_norm2_exact(b) for b in branches]
        probs = [float(p) for p in probs_exact]
    else:
        vec = vec.astype(complex)
        if abs(np.linalg.norm(vec) - 1) > 1e-10:
            raise InvalidInput("state is not normalized within 1e-10")
        branches = [to_complex(op) @ vec for op in ops]
        probs = [float(np.vdot(b, b).real) for b in branches]

    outcome = 0 if rng.random() < probs[0] else 1
    if probs[outcome] < 1e-12:
        warnings.warn(
            f"branch {outcome} has probability {probs[outcome]:.3g}; taking the other branch",
            stacklevel=2,
        )
        outcome = 1 - outcome
    post = branches[outcome]
    if exact:
        norm = sqrt_rational(probs_exact[outcome].to_fraction()) if probs_exact[outcome].is_rational() else None
        if norm is None:
            raise InvalidInput("exact branch probability is irrational; use the float path")
        post = scale(post, norm.inverse())
    else:
        post = post / math.sqrt(probs[outcome])
    return outcome, post, tuple(probs)
