"""Exact dense linear algebra over :class:`Cyclotomic` entries.

Matrices are numpy object arrays.  Products skip zero entries, which keeps the
monomial (permutation times phase) matrices that dominate this package cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import ONE, Cyclotomic, as_cyclotomic

ZERO = Cyclotomic(0)


def cmat(rows: Sequence[Sequence]) -> np.ndarray:
    """Object array of Cyclotomic from nested sequences of numbers."""
    arr = np.array(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = as_cyclotomic(x)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = ONE
    return out


def diag(values: Sequence) -> np.ndarray:
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i, i] = as_cyclotomic(v)
    return out


def _nonzero_rows(a: np.ndarray) -> list[list[tuple[int, Cyclotomic]]]:
    return [[(j, x) for j, x in enumerate(row) if not x.is_zero()] for row in a]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if b.ndim == 1:
        return matmul(a, b.reshape(-1, 1)).reshape(-1)
    brows = _nonzero_rows(b)
    out = zeros(a.shape[0], b.shape[1])
    for i, row in enumerate(a):
        acc: dict[int, Cyclotomic] = {}
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in brows[k]:
                p = x * y
                acc[j] = acc[j] + p if j in acc else p
        for j, v in acc.items():
            out[i, j] = v
    return out


def matprod(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def matpow(a: np.ndarray, k: int) -> np.ndarray:
    out = identity(a.shape[0])
    for _ in range(k):
        out = matmul(out, a)
    return out


def dagger(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape[::-1], dtype=object)
    for (i, j), x in np.ndenumerate(a):
        out[j, i] = x.conjugate()
    return out


def conj(v: np.ndarray) -> np.ndarray:
    out = np.empty(v.shape, dtype=object)
    for idx, x in np.ndenumerate(v):
        out[idx] = x.conjugate()
    return out


def scale(a: np.ndarray, c) -> np.ndarray:
    c = as_cyclotomic(c)
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = x * c
    return out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape
    p, q = b.shape
    out = zeros(n * p, m * q)
    for (i, j), x in np.ndenumerate(a):
        if x.is_zero():
            continue
        for (k, l), y in np.ndenumerate(b):
            if not y.is_zero():
                out[i * p + k, j * q + l] = x * y
    return out


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_zero(a: np.ndarray) -> bool:
    return all(x.is_zero() for x in a.flat)


def trace(a: np.ndarray) -> Cyclotomic:
    out = ZERO
    for i in range(a.shape[0]):
        out = out + a[i, i]
    return out


def to_complex(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=complex)
    for idx, x in np.ndenumerate(a):
        out[idx] = complex(x)
    return out


def is_diagonal(a: np.ndarray) -> bool:
    return all(x.is_zero() for (i, j), x in np.ndenumerate(a) if i != j)


def is_permutation(a: np.ndarray) -> bool:
    """True when every row and column holds a single 1 and zeros elsewhere."""
    if a.shape[0] != a.shape[1]:
        return False
    cols = set()
    for row in a:
        nz = [j for j, x in enumerate(row) if not x.is_zero()]
        if len(nz) != 1 or row[nz[0]] != 1:
            return False
        cols.add(nz[0])
    return len(cols) == a.shape[0]


def is_unitary(a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and equal(matmul(dagger(a), a), identity(a.shape[0]))


def first_nonzero(a: np.ndarray):
    for idx, x in np.ndenumerate(a):
        if not x.is_zero():
            return idx
    return None


def scalar_multiple(a: np.ndarray, b: np.ndarray) -> Cyclotomic | None:
    """lam with a == lam * b, or None.  Zero matrices only match each other."""
    if a.shape != b.shape:
        return None
    idx = first_nonzero(b)
    if idx is None:
        return ONE if is_zero(a) else None
    lam = a[idx] / b[idx]
    if lam.is_zero():
        return None
    return lam if equal(a, scale(b, lam)) else None


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def charpoly(a: np.ndarray) -> list[Cyclotomic]:
    """det(x I - a) by Faddeev-LeVerrier; monic, lowest degree first."""
    n = a.shape[0]
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = zeros(n)
    for k in range(1, n + 1):
        m = matmul(a, m)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            m[i, i] = m[i, i] + c_prev
        coeffs[n - k] = -trace(matmul(a, m)) * Fraction(1, k)
    return coeffs


def _trim(p: list[Cyclotomic]) -> list[Cyclotomic]:
    p = list(p)
    while len(p) > 1 and p[-1].is_zero():
        p.pop()
    return p


def poly_derivative(p: list[Cyclotomic]) -> list[Cyclotomic]:
    if len(p) <= 1:
        return [ZERO]
    return [p[k] * k for k in range(1, len(p))]


def poly_rem(p: list[Cyclotomic], q: list[Cyclotomic]) -> list[Cyclotomic]:
    p, q = _trim(p), _trim(q)
    if len(q) == 1 and q[0].is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = q[-1].inverse()
    while len(p) >= len(q) and not (len(p) == 1 and p[0].is_zero()):
        f = p[-1] * lead_inv
        shift = len(p) - len(q)
        for i, c in enumerate(q):
            p[shift + i] = p[shift + i] - f * c
        p = _trim(p[:-1]) if p[-1].is_zero() else _trim(p)
    return p


def poly_gcd(p: list[Cyclotomic], q: list[Cyclotomic]) -> list[Cyclotomic]:
    a, b = _trim(p), _trim(q)
    while not (len(b) == 1 and b[0].is_zero()):
        a, b = b, poly_rem(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def distinct_root_count(p: list[Cyclotomic]) -> int:
    """Number of distinct roots of p over C (degree of its squarefree part)."""
    p = _trim(p)
    g = poly_gcd(p, poly_derivative(p))
    return (len(p) - 1) - (len(g) - 1)


def root_multiplicity(p: list[Cyclotomic], root) -> int:
    """Multiplicity of an exact root of p."""
    root = as_cyclotomic(root)
    k = 0
    p = _trim(p)
    while len(p) > 1:
        high = p[::-1]
        acc = [high[0]]
        for c in high[1:]:
            acc.append(c + root * acc[-1])
        if not acc[-1].is_zero():
            break
        p = acc[-2::-1]
        k += 1
    return k
