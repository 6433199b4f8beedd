"""Modular data of the Z_N toric code D(Z_N).

Anyons are pairs ``(a1, a2)`` in Z_N x Z_N standing for e^a1 m^a2.  The S
matrix is stored unnormalized (pure phases)

    S[a, b] = w^-(a2 b1 + a1 b2),     T[a, a] = w^(a1 a2),     w = exp(2 pi i/N)

and the braiding is R[a, b] = w^(a2 b1), so that R[a, a] is the twist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .cyclotomic import ONE, Cyclotomic, omega
from .errors import InvalidModulus, TheoryMismatch
from .linalg import dagger, identity, is_permutation, matmul, scalar_multiple

__all__ = [
    "AnyonLabel",
    "FSymbols",
    "TheoryData",
    "build_theory",
    "fuse",
    "verify_modular_relations",
    "ModularReport",
]


@dataclass(frozen=True, order=True)
class AnyonLabel:
    """e^a1 m^a2 in D(Z_N). Ordered by (a1, a2)."""

    a1: int
    a2: int
    n: int = field(compare=True)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidModulus(f"modulus must be positive, got {self.n}")
        object.__setattr__(self, "a1", self.a1 % self.n)
        object.__setattr__(self, "a2", self.a2 % self.n)

    @property
    def dual(self) -> "AnyonLabel":
        return AnyonLabel(-self.a1, -self.a2, self.n)

    @property
    def is_vacuum(self) -> bool:
        return self.a1 == 0 and self.a2 == 0

    @property
    def dim(self) -> int:
        return 1

    @property
    def twist(self) -> Cyclotomic:
        return omega(self.n, self.a1 * self.a2)

    def __mul__(self, other: "AnyonLabel") -> "AnyonLabel":
        return fuse(self, other)

    def __pow__(self, k: int) -> "AnyonLabel":
        return AnyonLabel(self.a1 * k, self.a2 * k, self.n)

    def __str__(self) -> str:
        if self.is_vacuum:
            return "1"
        parts = []
        for sym, k in (("e", self.a1), ("m", self.a2)):
            if k == 1:
                parts.append(sym)
            elif k:
                parts.append(f"{sym}^{k}")
        return "".join(parts)

    def as_pair(self) -> tuple[int, int]:
        return (self.a1, self.a2)


def fuse(a: AnyonLabel, b: AnyonLabel) -> AnyonLabel:
    if a.n != b.n:
        raise TheoryMismatch(f"cannot fuse labels of D(Z_{a.n}) and D(Z_{b.n})")
    return AnyonLabel(a.a1 + b.a1, a.a2 + b.a2, a.n)


class FSymbols:
    """Six-index F table F[a, b, c, d, e, f] for (a x b) x c -> d.

    ``e`` is the intermediate channel a x b and ``f`` is b x c.  Entries that
    are not fusion-consistent are zero.  ``overrides`` lets a cocycle-twisted
    table be loaded; the generated table is identically one.
    """

    def __init__(self, n: int, overrides: dict | None = None) -> None:
        self.n = n
        self.overrides = dict(overrides or {})

    def __getitem__(self, idx) -> Cyclotomic:
        a, b, c, d, e, f = idx
        if fuse(a, b) != e or fuse(b, c) != f or fuse(e, c) != d:
            return Cyclotomic(0)
        return self.overrides.get(idx, ONE)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.overrides.values())


@dataclass(frozen=True, eq=False)
class TheoryData:
    n: int
    labels: tuple[AnyonLabel, ...]
    S: np.ndarray
    T: np.ndarray
    R: dict
    F: FSymbols
    global_dimension: int

    def index(self, a: AnyonLabel) -> int:
        self.check(a)
        return a.a1 * self.n + a.a2

    def check(self, *labels: AnyonLabel) -> None:
        for a in labels:
            if a.n != self.n:
                raise TheoryMismatch(f"label {a} is from D(Z_{a.n}), theory is D(Z_{self.n})")

    def label(self, a1: int, a2: int) -> AnyonLabel:
        return AnyonLabel(a1, a2, self.n)

    @property
    def vacuum(self) -> AnyonLabel:
        return AnyonLabel(0, 0, self.n)

    @property
    def e(self) -> AnyonLabel:
        return AnyonLabel(1, 0, self.n)

    @property
    def m(self) -> AnyonLabel:
        return AnyonLabel(0, 1, self.n)

    def s(self, a: AnyonLabel, b: AnyonLabel) -> Cyclotomic:
        return self.S[self.index(a), self.index(b)]

    def theta(self, a: AnyonLabel) -> Cyclotomic:
        i = self.index(a)
        return self.T[i, i]

    def monodromy(self, a: AnyonLabel, b: AnyonLabel) -> Cyclotomic:
        """R[a, b] R[b, a]."""
        return self.R[a, b] * self.R[b, a]

    def __iter__(self) -> Iterator[AnyonLabel]:
        return iter(self.labels)

    def __repr__(self) -> str:
        return f"TheoryData(D(Z_{self.n}))"


def build_theory(n: int) -> TheoryData:
    """Modular data of D(Z_n)."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidModulus(f"D(Z_N) needs N >= 2, got {n!r}")
    n = int(n)
    labels = tuple(AnyonLabel(a1, a2, n) for a1 in range(n) for a2 in range(n))
    size = n * n
    S = np.empty((size, size), dtype=object)
    T = np.empty((size, size), dtype=object)
    zero = Cyclotomic(0)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            S[i, j] = omega(n, -(a.a2 * b.a1 + a.a1 * b.a2))
            T[i, j] = omega(n, a.a1 * a.a2) if i == j else zero
    R = {(a, b): omega(n, a.a2 * b.a1) for a in labels for b in labels}
    return TheoryData(n, labels, S, T, R, FSymbols(n), n)


@dataclass
class ModularReport:
    checks: dict[str, bool]
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def verify_modular_relations(t: TheoryData) -> ModularReport:
    """Check unitarity of S/D, (S T)^3 ~ S^2, and that S^2 is a permutation."""
    d = Fraction(1, t.global_dimension)
    s = t.S * d
    size = s.shape[0]
    ident = identity(size)
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    checks["unitary"] = bool(np.all(matmul(s, dagger(s)) == ident))

    s2 = matmul(s, s)
    checks["charge_conjugation"] = is_permutation(s2)

    st = matmul(s, t.T)
    st3 = matmul(matmul(st, st), st)
    lam = scalar_multiple(st3, s2)
    checks["st_cubed"] = lam is not None
    if lam is not None:
        details["st_cubed_phase"] = str(lam)

    # diagonal T and S symmetry are structural, still worth reporting
    checks["t_diagonal"] = all(t.T[i, j].is_zero() for i in range(size) for j in range(size) if i != j)
    checks["s_symmetric"] = bool(np.all(t.S == t.S.T))
    return ModularReport(checks, details)
