"""Exact arithmetic in cyclotomic fields, with an optional 1/sqrt(B) factor.

A :class:`Cyclotomic` stores a value

    (c_0 + c_1 z + ... + c_{M-1} z^{M-1}) / sqrt(B)^k,    z = exp(2 pi i / M)

with rational ``c_j``, ``k`` in {0, 1} and ``B`` a squarefree integer.  The
coefficient vector is kept reduced modulo the M-th cyclotomic polynomial, so
for a fixed ``(M, k, B)`` the representation is unique.  The ``1/sqrt(B)``
factor is carried symbolically; it is only folded into the field (via Gauss
sums) when two operands with different radicals are added.

Equality and hashing go through :meth:`Cyclotomic.canonical`, which embeds the
value into its smallest cyclotomic field, so equal values always share a key.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Number = Union[int, Fraction, "Cyclotomic"]

__all__ = ["Cyclotomic", "omega", "sqrt_rational", "as_cyclotomic"]


# ---------------------------------------------------------------------------
# number theory helpers
# ---------------------------------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, b) with n = s*s*b and b squarefree."""
    s, b = 1, 1
    for p in _prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            b *= p
    return s, b


@lru_cache(maxsize=None)
def _cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _polydiv_exact(num, list(_cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    return out


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return len(_cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, m + 1) if math.gcd(u, m) == 1) if m > 1 else (1,)


@lru_cache(maxsize=None)
def _roots(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * j / m) for j in range(m))


def _reduce(coeffs: list[Fraction], m: int) -> list[Fraction]:
    """Reduce a length-m coefficient list modulo Phi_m (in place and returned)."""
    phi = _cyclotomic_poly(m)
    deg = len(phi) - 1
    for d in range(m - 1, deg - 1, -1):
        c = coeffs[d]
        if c:
            shift = d - deg
            for j, pj in enumerate(phi):
                if pj:
                    coeffs[shift + j] -= c * pj
    return coeffs


def _normal_order(m: int) -> int:
    return m // 2 if m % 4 == 2 else m


def _lift(coeffs: tuple[Fraction, ...], m: int, target: int) -> list[Fraction]:
    """Re-express an order-m coefficient vector in the order-``target`` power basis."""
    if m == target:
        return list(coeffs)
    step = target // m
    out = [Fraction(0)] * target
    for j, c in enumerate(coeffs):
        if c:
            out[j * step] += c
    return _reduce(out, target)


# ---------------------------------------------------------------------------
# the number type
# ---------------------------------------------------------------------------

class Cyclotomic:
    """Immutable exact element of Q(zeta_M), optionally divided by sqrt(B)."""

    __slots__ = ("order", "coeffs", "sqrtpow", "sqrtbase", "_key")

    def __init__(
        self,
        coeffs: Iterable[Union[int, Fraction, str]] | int | Fraction = 0,
        order: int | None = None,
        sqrtpow: int = 0,
        sqrtbase: int = 1,
    ) -> None:
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        cs = [Fraction(c) for c in coeffs]
        m = len(cs) if order is None else int(order)
        if m < 1 or len(cs) > m:
            raise ValueError(f"coefficient list of length {len(cs)} does not fit order {m}")
        cs += [Fraction(0)] * (m - len(cs))
        if sqrtpow < 0 or sqrtbase < 1:
            raise ValueError("sqrtpow must be >= 0 and sqrtbase >= 1")

        # z_{2m} = -z_m^{(m+1)/2} for odd m
        if m % 4 == 2:
            h = m // 2
            half = (h + 1) // 2
            folded = [Fraction(0)] * h
            for j, c in enumerate(cs):
                if c:
                    folded[(j * half) % h] += -c if j % 2 else c
            cs, m = folded, h
        _reduce(cs, m)

        # fold 1/sqrt(B)^k down to k in {0, 1} with squarefree B
        if sqrtpow and sqrtbase > 1:
            s, b = _squarefree_split(sqrtbase)
            scale = Fraction(1, s ** sqrtpow) / Fraction(b ** (sqrtpow // 2))
            k = sqrtpow % 2
            if scale != 1:
                cs = [c * scale for c in cs]
            if b == 1:
                k = 0
            sqrtbase = b if k else 1
            sqrtpow = k
        else:
            sqrtpow, sqrtbase = 0, 1

        if not any(cs[1:]):
            cs, m = cs[:1], 1
        if not cs[0] and m == 1:
            sqrtpow, sqrtbase = 0, 1

        self.order = m
        self.coeffs = tuple(cs)
        self.sqrtpow = sqrtpow
        self.sqrtbase = sqrtbase
        self._key = None

    # -- construction helpers ------------------------------------------------
    @classmethod
    def root(cls, order: int, power: int = 1) -> "Cyclotomic":
        """exp(2 pi i power / order)."""
        cs = [0] * order
        cs[power % order] = 1
        return cls(cs, order)

    @classmethod
    def _raw(cls, coeffs: list[Fraction], m: int, k: int, b: int) -> "Cyclotomic":
        # caller guarantees coeffs are reduced and (k, b) normalized
        obj = object.__new__(cls)
        if not any(coeffs[1:]):
            coeffs, m = coeffs[:1], 1
            if not coeffs[0]:
                k, b = 0, 1
        obj.order = m
        obj.coeffs = tuple(coeffs)
        obj.sqrtpow = k
        obj.sqrtbase = b
        obj._key = None
        return obj

    # -- predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.order == 1 and not self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.order == 1 and self.sqrtpow == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            c = self.canonical()
            if c[0] == 1:
                return c[1][0]
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- conversion ------------------------------------------------------------
    def __complex__(self) -> complex:
        roots = _roots(self.order)
        re_, im_ = [], []
        for c, r in zip(self.coeffs, roots):
            if c:
                f = float(c)
                re_.append(f * r.real)
                im_.append(f * r.imag)
        val = complex(math.fsum(re_), math.fsum(im_))
        if self.sqrtpow:
            val /= math.sqrt(self.sqrtbase)
        return val

    def __float__(self) -> float:
        z = complex(self)
        if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
            raise ValueError(f"{self} is not real")
        return z.real

    # -- field embedding ---------------------------------------------------------
    def embedded(self) -> "Cyclotomic":
        """Same value with the 1/sqrt(B) factor absorbed into the field."""
        if not self.sqrtpow:
            return self
        flat = Cyclotomic._raw(list(self.coeffs), self.order, 0, 1)
        return flat * _sqrt_in_field(self.sqrtbase) * Fraction(1, self.sqrtbase)

    def canonical(self) -> tuple[int, tuple[Fraction, ...]]:
        """(conductor, coefficients) in the smallest cyclotomic field holding the value."""
        if self._key is None:
            flat = self.embedded()
            self._key = _min_field(flat.coeffs, flat.order)
        return self._key

    def __hash__(self) -> int:
        key = self.canonical()
        if key[0] == 1:
            return hash(key[1][0])
        return hash(key)

    # -- arithmetic ---------------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw([Fraction(other)], 1, 0, 1)
        return None

    def _aligned(self, other: "Cyclotomic"):
        a, b = self, other
        if (a.sqrtpow, a.sqrtbase) != (b.sqrtpow, b.sqrtbase):
            if a.is_zero():
                a = Cyclotomic._raw([Fraction(0)], 1, b.sqrtpow, b.sqrtbase)
            elif b.is_zero():
                b = Cyclotomic._raw([Fraction(0)], 1, a.sqrtpow, a.sqrtbase)
            else:
                a, b = a.embedded(), b.embedded()
        m = _lcm_order(a.order, b.order)
        return _lift(a.coeffs, a.order, m), _lift(b.coeffs, b.order, m), m, a.sqrtpow, a.sqrtbase

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        x, y, m, k, b = self._aligned(o)
        return Cyclotomic._raw([p + q for p, q in zip(x, y)], m, k, b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw([-c for c in self.coeffs], self.order, self.sqrtpow, self.sqrtbase)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return Cyclotomic._raw([c * other for c in self.coeffs], self.order, self.sqrtpow, self.sqrtbase)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return _ZERO
        if other.order == 1 and not other.sqrtpow and other.coeffs[0] == 1:
            return self
        if self.order == 1 and not self.sqrtpow and self.coeffs[0] == 1:
            return other
        if self.order == 1:
            head = self.coeffs[0]
            cs, m = [c * head for c in other.coeffs], other.order
        elif other.order == 1:
            head = other.coeffs[0]
            cs, m = [c * head for c in self.coeffs], self.order
        else:
            m = _lcm_order(self.order, other.order)
            x = _lift(self.coeffs, self.order, m)
            y = _lift(other.coeffs, other.order, m)
            cs = [Fraction(0)] * m
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        if yj:
                            cs[(i + j) % m] += xi * yj
            _reduce(cs, m)
        k1, b1, k2, b2 = self.sqrtpow, self.sqrtbase, other.sqrtpow, other.sqrtbase
        if k1 and k2:
            g = math.gcd(b1, b2)
            bb = (b1 // g) * (b2 // g)
            cs = [c / g for c in cs]
            k, b = (1, bb) if bb > 1 else (0, 1)
        elif k1:
            k, b = 1, b1
        elif k2:
            k, b = 1, b2
        else:
            k, b = 0, 1
        return Cyclotomic._raw(cs, m, k, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        m = self.order
        cs = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            if c:
                cs[(-j) % m] += c
        return Cyclotomic._raw(_reduce(cs, m), m, self.sqrtpow, self.sqrtbase)

    def galois(self, u: int) -> "Cyclotomic":
        """Apply z -> z^u to the field part (the radical factor is left alone)."""
        m = self.order
        if math.gcd(u, m) != 1:
            raise ValueError(f"{u} is not a unit mod {m}")
        cs = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            if c:
                cs[(u * j) % m] += c
        return Cyclotomic._raw(_reduce(cs, m), m, self.sqrtpow, self.sqrtbase)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            inv_c = 1 / self.coeffs[0]
            if self.sqrtpow:
                return Cyclotomic._raw([inv_c * self.sqrtbase], 1, 1, self.sqrtbase)
            return Cyclotomic._raw([inv_c], 1, 0, 1)
        flat = Cyclotomic._raw(list(self.coeffs), self.order, 0, 1)
        others = ONE
        for u in _units(self.order):
            if u != 1:
                others = others * flat.galois(u)
        norm = (flat * others).to_fraction()
        inv = others * (1 / norm)
        if self.sqrtpow:
            # 1/(z/sqrt B) = B * z^-1 / sqrt B
            inv = Cyclotomic._raw(
                [c * self.sqrtbase for c in inv.coeffs], inv.order, 1, self.sqrtbase
            )
        return inv

    def abs2(self) -> "Cyclotomic":
        return self * self.conjugate()

    # -- comparison ----------------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        if (
            self.order == o.order
            and self.sqrtpow == o.sqrtpow
            and self.sqrtbase == o.sqrtbase
        ):
            return self.coeffs == o.coeffs
        return (self - o).is_zero()

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    # -- text forms ------------------------------------------------------------------
    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z{self.order}^{j}")
            elif c == -1:
                terms.append(f"-z{self.order}^{j}")
            else:
                terms.append(f"{c}*z{self.order}^{j}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.sqrtpow:
            return f"({body})/sqrt({self.sqrtbase})"
        return body

    def __repr__(self) -> str:
        return f"Cyclotomic('{self}')"

    _TERM = re.compile(r"^(?:(?P<c>[+-]?\d+(?:/\d+)?)(?:\*z(?P<m1>\d+)\^(?P<j1>\d+))?|(?P<s>[+-]?)z(?P<m2>\d+)\^(?P<j2>\d+))$")

    @classmethod
    def parse(cls, text: str) -> "Cyclotomic":
        """Inverse of ``str``: ``'1/2 - z3^1'``, ``'(1 + z3^2)/sqrt(3)'``, ``'0'``."""
        s = text.strip()
        k, b = 0, 1
        m_sqrt = re.fullmatch(r"\((.*)\)/sqrt\((\d+)\)", s)
        if m_sqrt:
            s, k, b = m_sqrt.group(1), 1, int(m_sqrt.group(2))
        s = re.sub(r"\s+-\s+", " + -", s)
        total = Cyclotomic(0)
        for raw in s.split(" + "):
            raw = raw.strip()
            m = cls._TERM.match(raw)
            if not m:
                raise ValueError(f"cannot parse cyclotomic term {raw!r} in {text!r}")
            if m.group("m2"):
                coef = Fraction(-1 if m.group("s") == "-" else 1)
                order, j = int(m.group("m2")), int(m.group("j2"))
            else:
                coef = Fraction(m.group("c"))
                if m.group("m1"):
                    order, j = int(m.group("m1")), int(m.group("j1"))
                else:
                    order, j = 1, 0
            total = total + Cyclotomic.root(order, j) * coef
        if k:
            total = total * Cyclotomic(1, 1, 1, b)
        return total

    def to_json(self) -> dict:
        return {
            "coeffs": [str(c) for c in self.coeffs],
            "order": self.order,
            "sqrtpow": self.sqrtpow,
            "sqrtbase": self.sqrtbase,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclotomic":
        order = int(obj["order"])
        sqrtpow = int(obj.get("sqrtpow", 0))
        # the compact form omits sqrtbase and means 1/sqrt(order)
        sqrtbase = int(obj.get("sqrtbase", order if sqrtpow else 1))
        return cls([Fraction(c) for c in obj["coeffs"]], order, sqrtpow, sqrtbase)

    def pretty(self, symbol: str = "ω") -> str:
        """Human-readable form; order-3 values use ``symbol`` for exp(2 pi i/3)."""
        sup = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
        base = symbol if self.order == 3 else f"ζ{self.order}"
        # monomials c * z^k read better than their power-basis expansion
        for k in range(1, self.order):
            y = self * Cyclotomic.root(self.order, -k)
            if y.order == 1:
                c = y.coeffs[0]
                root = base if k == 1 else base + str(k).translate(sup)
                head = root if c == 1 else "-" + root if c == -1 else f"{c}{root}"
                return f"{head}/√{self.sqrtbase}" if self.sqrtpow else head
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
                continue
            root = base if j == 1 else base + str(j).translate(sup)
            if c == 1:
                terms.append(root)
            elif c == -1:
                terms.append("-" + root)
            else:
                terms.append(f"{c}{root}")
        body = "+".join(terms).replace("+-", "-") if terms else "0"
        if self.sqrtpow:
            if len(terms) > 1:
                body = f"({body})"
            return f"{body}/√{self.sqrtbase}"
        return body


def _lcm_order(a: int, b: int) -> int:
    return _normal_order(a * b // math.gcd(a, b))


@lru_cache(maxsize=None)
def _sqrt_in_field(b: int) -> Cyclotomic:
    """sqrt(b) for squarefree b as an element of a cyclotomic field."""
    out = ONE
    for p in _prime_factors(b):
        if p == 2:
            r = Cyclotomic.root(8, 1) + Cyclotomic.root(8, 7)
        else:
            g = Cyclotomic(0)
            for j in range(1, p):
                leg = 1 if pow(j, (p - 1) // 2, p) == 1 else -1
                g = g + Cyclotomic.root(p, j) * leg
            # quadratic Gauss sum is sqrt(p) or i*sqrt(p)
            r = g if p % 4 == 1 else g * Cyclotomic.root(4, 3)
        out = out * r
    return out


def _solve_rational(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve sum_i x_i cols[i] = rhs exactly; None when inconsistent."""
    n, m = len(cols), len(rhs)
    a = [[cols[i][r] for i in range(n)] + [rhs[r]] for r in range(m)]
    piv_cols, row = [], 0
    for col in range(n):
        piv = next((r for r in range(row, m) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        piv_cols.append(col)
        row += 1
    if any(a[r][n] for r in range(row, m)):
        return None
    x = [Fraction(0)] * n
    for r, col in enumerate(piv_cols):
        x[col] = a[r][n]
    return x


def _min_field(coeffs: tuple[Fraction, ...], m: int) -> tuple[int, tuple[Fraction, ...]]:
    if m == 1:
        return 1, coeffs
    val = Cyclotomic._raw(list(coeffs), m, 0, 1)
    for d in sorted(d for d in range(1, m) if m % d == 0 and d % 4 != 2):
        fixed = all(val.galois(u) == val for u in _units(m) if u % d == 1 % d)
        if not fixed:
            continue
        step = m // d
        cols = [_basis_vector(i * step, m) for i in range(_phi(d))]
        sol = _solve_rational(cols, list(val.coeffs))
        if sol is not None:
            return d, tuple(sol)
    # reduced vectors vanish beyond phi(m); trim so keys compare across paths
    return m, tuple(coeffs[: _phi(m)])


def _basis_vector(power: int, m: int) -> list[Fraction]:
    v = [Fraction(0)] * m
    v[power % m] = Fraction(1)
    return _reduce(v, m)


_ZERO = Cyclotomic(0)
ONE = Cyclotomic(1)


def omega(n: int, power: int = 1) -> Cyclotomic:
    """exp(2 pi i power / n)."""
    return Cyclotomic.root(n, power)


def sqrt_rational(q: Fraction | int) -> Cyclotomic:
    """Exact square root of a non-negative rational, as s/sqrt(b) or s."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    if not q:
        return _ZERO
    # sqrt(p/q) = sqrt(p q)/q = s sqrt(b)/q = s b /(q sqrt(b))
    s, b = _squarefree_split(q.numerator * q.denominator)
    if b == 1:
        return Cyclotomic(Fraction(s, q.denominator))
    return Cyclotomic(Fraction(s * b, q.denominator), 1, 1, b)


def as_cyclotomic(x: Number) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Cyclotomic")
