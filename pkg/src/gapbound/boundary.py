"""Gapped boundary types (Lagrangian subgroups) and multi-hole ground spaces.

Basis convention
----------------
A basis state of ``n`` holes is a labeling ``(a_1, ..., a_n)`` with ``a_i``
condensing on hole ``i`` and ``a_1 x ... x a_n = 1``.  Labelings are sorted
lexicographically by the dual charges ``(abar_1, ..., abar_{n-1})``, each
compared by its (e, m) exponents.  For a pair of holes this means the state
``|c>`` with ``(a_1, a_2) = (cbar, c)`` sits at position ``c``, so the e-e
qutrit basis reads ``(|1>, |e>, |ebar>)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import AmbiguousRegister, InvalidInput, TheoryMismatch
from .theory import AnyonLabel, TheoryData, fuse


@dataclass(frozen=True, eq=False)
class LagrangianAlgebra:
    theory: TheoryData
    condensed: frozenset
    name: str
    key: str

    def __contains__(self, a: AnyonLabel) -> bool:
        return a in self.condensed

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LagrangianAlgebra)
            and other.theory.n == self.theory.n
            and other.condensed == self.condensed
        )

    def __hash__(self) -> int:
        return hash((self.theory.n, self.condensed))

    @property
    def sorted_labels(self) -> list[AnyonLabel]:
        return sorted(self.condensed)

    def __repr__(self) -> str:
        return f"LagrangianAlgebra({self.name})"


def _generated(theory: TheoryData, gens: Sequence[AnyonLabel]) -> frozenset:
    out = {theory.vacuum}
    frontier = [theory.vacuum]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = fuse(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def algebra_name(labels) -> str:
    return "+".join(str(a) for a in sorted(labels))


def _short_key(theory: TheoryData, condensed: frozenset, index: int) -> str:
    if condensed == _generated(theory, [theory.e]):
        return "e"
    if condensed == _generated(theory, [theory.m]):
        return "m"
    return f"L{index}"


def is_lagrangian(theory: TheoryData, labels) -> bool:
    """Order N subgroup of bosons with trivial mutual braiding."""
    labels = frozenset(labels)
    n = theory.n
    if len(labels) != n or theory.vacuum not in labels:
        return False
    if any(fuse(a, b) not in labels for a in labels for b in labels):
        return False
    if any(theory.theta(a) != 1 for a in labels):
        return False
    return all(theory.s(a, b) == 1 for a in labels for b in labels)


def enumerate_lagrangians(theory: TheoryData) -> list[LagrangianAlgebra]:
    """All Lagrangian subgroups of Z_N x Z_N, ordered by their sorted label lists."""
    # every subgroup of Z_N x Z_N has at most two generators
    found: set[frozenset] = set()
    labels = theory.labels
    for g in labels:
        if theory.theta(g) != 1:
            continue
        for h in labels:
            if h < g or theory.theta(h) != 1:
                continue
            sub = _generated(theory, [g, h])
            if len(sub) == theory.n and sub not in found and is_lagrangian(theory, sub):
                found.add(sub)
    e_sub = _generated(theory, [theory.e])
    m_sub = _generated(theory, [theory.m])
    ordered = sorted(found, key=lambda s: (s != e_sub, s != m_sub, sorted(s)))
    return [
        LagrangianAlgebra(theory, sub, algebra_name(sub), _short_key(theory, sub, i))
        for i, sub in enumerate(ordered)
    ]


def lagrangian_by_key(theory: TheoryData, key: str) -> LagrangianAlgebra:
    """Look up a boundary type by short key ('e', 'm', 'L2') or full name."""
    algebras = enumerate_lagrangians(theory)
    for alg in algebras:
        if key in (alg.key, alg.name):
            return alg
    known = ", ".join(a.key for a in algebras)
    raise InvalidInput(f"no boundary type {key!r} in D(Z_{theory.n}); known: {known}")


@dataclass(frozen=True, eq=False)
class GroundSpace:
    boundaries: tuple[LagrangianAlgebra, ...]
    basis: tuple[tuple[AnyonLabel, ...], ...]
    index: dict = field(repr=False)

    @property
    def theory(self) -> TheoryData:
        return self.boundaries[0].theory

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n_holes(self) -> int:
        return len(self.boundaries)

    def boundary(self, hole: int) -> LagrangianAlgebra:
        """1-based hole lookup."""
        if not 1 <= hole <= self.n_holes:
            raise InvalidInput(f"hole {hole} out of range 1..{self.n_holes}")
        return self.boundaries[hole - 1]

    def describe(self) -> str:
        return "[" + ",".join(b.key for b in self.boundaries) + "]"

    def __repr__(self) -> str:
        return f"GroundSpace(N={self.theory.n}, boundaries={self.describe()}, dim={self.dim})"


def _sort_key(labeling: tuple[AnyonLabel, ...]):
    return tuple(a.dual.as_pair() for a in labeling[:-1])


def build_ground_space(boundaries: Sequence[LagrangianAlgebra]) -> GroundSpace:
    if not boundaries:
        raise InvalidInput("a ground space needs at least one boundary")
    n = boundaries[0].theory.n
    if any(b.theory.n != n for b in boundaries):
        raise TheoryMismatch("boundaries come from different theories")
    theory = boundaries[0].theory
    vac = theory.vacuum
    basis = []
    for head in product(*(b.sorted_labels for b in boundaries[:-1])):
        total = vac
        for a in head:
            total = fuse(total, a)
        last = total.dual
        if last in boundaries[-1]:
            basis.append(tuple(head) + (last,))
    basis.sort(key=_sort_key)
    return GroundSpace(tuple(boundaries), tuple(basis), {lab: i for i, lab in enumerate(basis)})


@dataclass(frozen=True)
class RegisterMap:
    """Qudit registers carved out of a ground space by a hole pairing.

    Register ``r`` for pair ``(i, j)`` is labeled by the charge on hole ``j``.
    ``labels[r]`` lists the values it takes, in basis order.
    """

    pairing: tuple[tuple[int, int], ...]
    labels: tuple[tuple[AnyonLabel, ...], ...]
    to_tuple: tuple[tuple[int, ...], ...]
    from_tuple: dict

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(lab) for lab in self.labels)


def qudit_registers(space: GroundSpace, pairing: Sequence[Sequence[int]]) -> RegisterMap:
    holes = sorted(h for pair in pairing for h in pair)
    if holes != list(range(1, space.n_holes + 1)):
        raise InvalidInput(f"pairing {list(pairing)} does not partition holes 1..{space.n_holes}")
    pairs = tuple((min(p), max(p)) for p in pairing)
    for i, j in pairs:
        if space.boundary(i) != space.boundary(j):
            # mismatched types are fine only when the pair charge is forced
            values = {lab[j - 1] for lab in space.basis}
            if len(values) > 1:
                raise AmbiguousRegister(
                    f"holes {i},{j} carry different boundary types and their charge is not fixed"
                )
    per_reg = []
    for _, j in pairs:
        seen = sorted({lab[j - 1] for lab in space.basis}, key=lambda a: a.as_pair())
        per_reg.append(tuple(seen))
    to_tuple = []
    for lab in space.basis:
        to_tuple.append(tuple(per_reg[r].index(lab[j - 1]) for r, (_, j) in enumerate(pairs)))
    size = 1
    for labels in per_reg:
        size *= len(labels)
    if len(set(to_tuple)) != space.dim or size != space.dim:
        raise AmbiguousRegister(
            f"pairing {list(pairs)} does not give a product of registers on {space!r}"
        )
    return RegisterMap(pairs, tuple(per_reg), tuple(to_tuple), {t: i for i, t in enumerate(to_tuple)})


@dataclass(frozen=True, eq=False)
class ProductSpace:
    """Tensor product of independent ground spaces, e.g. two separated qutrits.

    Basis states are tuples of factor basis indices in row-major order.
    """

    factors: tuple[GroundSpace, ...]

    @property
    def dim(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.dim
        return out

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def theory(self) -> TheoryData:
        return self.factors[0].theory

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(product(*(range(f.dim) for f in self.factors)))

    def describe(self) -> str:
        return "x".join(f.describe() for f in self.factors)

    def __repr__(self) -> str:
        return f"ProductSpace({self.describe()}, dim={self.dim})"
