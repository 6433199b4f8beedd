"""Pure braid group acting on a ground space by braiding holes.

The generator ``A_ij`` (hole ``i`` taken counter-clockwise once around hole
``j``) is evaluated on the left-comb fusion tree of the labeling.  Adjacent
pairs use the F R R F^-1 pattern; other pairs are conjugated into adjacency by
half braids, ``A_ij = s_{j-1}..s_{i+1} s_i^2 s_{i+1}^-1..s_{j-1}^-1``.

Handedness: the counter-clockwise exchange acts with the reverse braiding
``Rrev[x, y] = 1 / R[y, x]``, so a full turn of ``x`` around ``y`` multiplies
by ``S[x, y]``.  This is the same phase the counter-clockwise Wilson loop of
``x`` picks up around a hole of charge ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .boundary import GroundSpace
from .cyclotomic import ONE, Cyclotomic
from .errors import ExceedsBound, InvalidInput
from .linalg import dagger, first_nonzero, identity, matmul, zeros
from .theory import AnyonLabel, TheoryData, fuse
from .wilson import OperatorMatrix


@dataclass(frozen=True, order=True)
class BraidGenerator:
    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise InvalidInput(f"braid generator needs 1 <= i < j, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"A({self.i},{self.j})"


def _comb(labels: Sequence[AnyonLabel], vac: AnyonLabel) -> list[AnyonLabel]:
    """Intermediate charges b_0 = 1, b_k = a_1 x ... x a_k."""
    out = [vac]
    for a in labels:
        out.append(fuse(out[-1], a))
    return out


@lru_cache(maxsize=None)
def _rrev_table(theory: TheoryData) -> dict:
    return {(x, y): theory.R[y, x].inverse() for x in theory.labels for y in theory.labels}


def _rrev(theory: TheoryData, x: AnyonLabel, y: AnyonLabel) -> Cyclotomic:
    return _rrev_table(theory)[x, y]


def _half_braid(theory: TheoryData, labels: list[AnyonLabel], k: int, inverse: bool):
    """Exchange positions k, k+1 (1-based). Returns (new labels, phase)."""
    x, y = labels[k - 1], labels[k]
    b = _comb(labels, theory.vacuum)
    left, right = b[k - 1], b[k + 1]
    channel = fuse(x, y)
    swapped_mid = fuse(left, y)
    f_in = theory.F[left, x, y, right, b[k], channel]
    f_out = theory.F[left, y, x, right, swapped_mid, channel]
    r = _rrev(theory, y, x).inverse() if inverse else _rrev(theory, x, y)
    new = list(labels)
    new[k - 1], new[k] = y, x
    return new, f_in * r * f_out.inverse()


def _adjacent_full_twist(theory: TheoryData, labels: list[AnyonLabel], k: int) -> Cyclotomic:
    """F R R F^-1 for holes k and k+1 (1-based) of the comb."""
    x, y = labels[k - 1], labels[k]
    b = _comb(labels, theory.vacuum)
    left, right = b[k - 1], b[k + 1]
    channel = fuse(x, y)
    f = theory.F[left, x, y, right, b[k], channel]
    return f * _rrev(theory, y, x) * _rrev(theory, x, y) * f.inverse()


def generator_phase(theory: TheoryData, labels: Sequence[AnyonLabel], i: int, j: int) -> Cyclotomic:
    """Eigenvalue of A_ij on one labeling."""
    labels = list(labels)
    phase = ONE
    # move hole j down next to hole i
    for k in range(j - 1, i, -1):
        labels, p = _half_braid(theory, labels, k, inverse=True)
        phase = phase * p
    phase = phase * _adjacent_full_twist(theory, labels, i)
    for k in range(i + 1, j):
        labels, p = _half_braid(theory, labels, k, inverse=False)
        phase = phase * p
    return phase


def braid_squared(space: GroundSpace, g: BraidGenerator) -> OperatorMatrix:
    if g.j > space.n_holes:
        raise InvalidInput(f"{g} needs {g.j} holes, space has {space.n_holes}")
    theory = space.theory
    out = zeros(space.dim)
    for idx, lab in enumerate(space.basis):
        out[idx, idx] = generator_phase(theory, lab, g.i, g.j)
    return OperatorMatrix(space, out, f"braid {g}")


def all_generators(n_holes: int) -> list[BraidGenerator]:
    return [BraidGenerator(i, j) for i in range(1, n_holes + 1) for j in range(i + 1, n_holes + 1)]


def pure_braid_image(space: GroundSpace, word: Iterable[tuple[BraidGenerator, int]]) -> OperatorMatrix:
    """Product G_1^{e_1} G_2^{e_2} ... of the word's generator matrices."""
    out = identity(space.dim)
    names = []
    for g, e in word:
        if e not in (1, -1):
            raise InvalidInput(f"braid word exponents must be +-1, got {e}")
        m = braid_squared(space, g).entries
        if e == -1:
            m = dagger(m)
        out = matmul(out, m)
        names.append(f"{g}^{e}")
    return OperatorMatrix(space, out, "braid word " + " ".join(names))


def _projective_key(m: np.ndarray):
    idx = first_nonzero(m)
    if idx is None:
        return ()
    lead = m[idx].inverse()
    return tuple((x * lead).canonical() for x in m.flat)


def group_order_generated(space: GroundSpace, bound: int = 10**6) -> int:
    """Order of the group generated by all A_ij, modulo global phases."""
    gens = [braid_squared(space, g).entries for g in all_generators(space.n_holes)]
    start = identity(space.dim)
    seen = {_projective_key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = matmul(m, g)
                key = _projective_key(p)
                if key not in seen:
                    seen.add(key)
                    if len(seen) > bound:
                        raise ExceedsBound(f"braid image exceeds {bound} elements")
                    nxt.append(p)
        frontier = nxt
    return len(seen)
