"""Tunneling and loop operators on a ground space.

``tunnel(space, a, i, j)`` moves an ``a`` anyon from hole ``i`` to hole ``j``
along the straight arc between them; for abelian data it shifts the labeling
``a_i -> a_i abar`` and ``a_j -> a_j a``.  ``loop(space, a, i)`` runs ``a``
counter-clockwise around hole ``i`` and is diagonal with eigenvalue
``S[a, a_i] / d_{a_i}``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .boundary import GroundSpace, LagrangianAlgebra
from .cyclotomic import ONE, Cyclotomic, sqrt_rational
from .errors import InvalidInput, NotCondensable
from .linalg import is_unitary as _is_unitary
from .linalg import zeros
from .theory import AnyonLabel, fuse


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    space: GroundSpace
    entries: np.ndarray
    provenance: str

    def __post_init__(self) -> None:
        d = self.space.dim
        if self.entries.shape != (d, d):
            raise InvalidInput(f"{self.provenance}: matrix shape {self.entries.shape} != ({d}, {d})")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        from .linalg import matmul

        return OperatorMatrix(self.space, matmul(self.entries, other.entries), f"{self.provenance} * {other.provenance}")


@dataclass(frozen=True)
class MSymbolTable:
    """M^{ab}_c for one boundary; missing entries default to 1."""

    boundary: LagrangianAlgebra
    entries: dict = field(default_factory=dict)

    def __getitem__(self, key: tuple[AnyonLabel, AnyonLabel, AnyonLabel]) -> Cyclotomic:
        a, b, c = key
        if a not in self.boundary or b not in self.boundary or c not in self.boundary:
            raise NotCondensable(f"M symbol ({a},{b};{c}) needs condensing labels")
        if fuse(a, b) != c:
            return Cyclotomic(0)
        return self.entries.get(key, ONE)


def _check_hole(space: GroundSpace, hole: int) -> None:
    if not 1 <= hole <= space.n_holes:
        raise InvalidInput(f"hole {hole} out of range 1..{space.n_holes}")


def tunnel(space: GroundSpace, a: AnyonLabel, source: int, target: int) -> OperatorMatrix:
    """W_a along the arc from hole ``source`` to hole ``target``."""
    space.theory.check(a)
    _check_hole(space, source)
    _check_hole(space, target)
    if source == target:
        raise InvalidInput("tunneling needs two distinct holes")
    if a not in space.boundary(target) or a.dual not in space.boundary(source):
        raise NotCondensable(
            f"{a} must condense on hole {target} and {a.dual} on hole {source}"
        )
    out = zeros(space.dim)
    for col, lab in enumerate(space.basis):
        new = list(lab)
        new[source - 1] = fuse(new[source - 1], a.dual)
        new[target - 1] = fuse(new[target - 1], a)
        out[space.index[tuple(new)], col] = ONE
    return OperatorMatrix(space, out, f"tunnel {a} from {source} to {target}")


def loop(space: GroundSpace, a: AnyonLabel, hole: int) -> OperatorMatrix:
    """Counter-clockwise W_a around ``hole``."""
    theory = space.theory
    theory.check(a)
    _check_hole(space, hole)
    out = zeros(space.dim)
    for i, lab in enumerate(space.basis):
        b = lab[hole - 1]
        s = theory.s(a, b)
        out[i, i] = s if b.dim == 1 else s * Fraction(1, b.dim)
    return OperatorMatrix(space, out, f"loop {a} around {hole}")


def compose_tunnels(
    space: GroundSpace,
    a: AnyonLabel,
    b: AnyonLabel,
    m1: MSymbolTable | None = None,
    m2: MSymbolTable | None = None,
) -> dict[AnyonLabel, Cyclotomic]:
    """Fusion-channel expansion of W_a W_b between holes 1 and 2.

    coefficient(c) = M^{ab}_c(A_1) conj(M^{ab}_c(A_2)) sqrt(d_a d_b / d_c)
    """
    if space.n_holes < 2:
        raise InvalidInput("composition needs two holes")
    b1, b2 = space.boundary(1), space.boundary(2)
    m1 = m1 or MSymbolTable(b1)
    m2 = m2 or MSymbolTable(b2)
    for x in (a, b):
        if x not in b2 or x.dual not in b1:
            raise NotCondensable(f"{x} cannot tunnel from hole 1 to hole 2")
    out = {}
    # abelian fusion: a single channel
    for c in (fuse(a, b),):
        coeff = m1[a, b, c] * m2[a, b, c].conjugate()
        coeff = coeff * sqrt_rational(Fraction(a.dim * b.dim, c.dim))
        if not coeff.is_zero():
            out[c] = coeff
    return out


def is_unitary(op: OperatorMatrix) -> bool:
    return _is_unitary(op.entries)


def checked(op: OperatorMatrix) -> OperatorMatrix:
    """Return ``op`` unchanged, warning when it leaves the protected space non-unitarily."""
    if not is_unitary(op):
        warnings.warn(f"{op.provenance} is not unitary on the ground space", stacklevel=2)
    return op
