"""Arithmetic in GF(2^m) over a polynomial basis.

Elements are plain ints (bit i is the coefficient of x^i) inside the hot
paths; :class:`FieldElement` wraps them with operators for interactive use.
Log/antilog tables are built once per field, so ``mul``/``inv``/``pow`` are
table lookups and the ``v*`` methods are their numpy-vectorized versions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

MAX_DEGREE = 20


class FieldError(ValueError):
    pass


# -- polynomials over GF(2) as int bitmasks -------------------------------


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mulmod(a: int, b: int, mod: int) -> int:
    """Carry-less product of ``a`` and ``b`` reduced modulo ``mod``."""
    deg = poly_degree(mod)
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if (a >> deg) & 1:
            a ^= mod
    return result


def poly_mod(a: int, mod: int) -> int:
    deg = poly_degree(mod)
    while a and poly_degree(a) >= deg:
        a ^= mod << (poly_degree(a) - deg)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(poly: int) -> bool:
    """Ben-Or test: ``gcd(x^(2^i) - x, f) = 1`` for every ``i <= m/2``."""
    m = poly_degree(poly)
    if m < 1:
        return False
    if m == 1:
        return True
    if not poly & 1:
        return False
    x = 0b10
    h = x
    for _ in range(m // 2):
        h = poly_mulmod(h, h, poly)
        if poly_gcd(poly, h ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree ``m``."""
    for poly in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


class CubicRoots(NamedTuple):
    """Distinct roots of a cubic, plus whether any root is repeated."""

    roots: frozenset
    repeated: bool


# -- the field --------------------------------------------------------------


class FieldSpec:
    """GF(2^m) with an explicit irreducible modulus and a primitive element.

    >>> F = FieldSpec(5, 0x25)
    >>> F.add(F.w(5), F.w(2))
    1
    """

    def __init__(self, m: int, modulus: int | None = None, generator: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {m}")
        if modulus is None:
            modulus = default_modulus(m)
        if poly_degree(modulus) != m:
            raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
        if not is_irreducible(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus
        order = self.q - 1
        factors = _prime_factors(order) if order > 1 else []

        def primitive(g: int) -> bool:
            if g == 0 or g >= self.q:
                return False
            if order == 1:
                return g == 1
            return all(self._slow_pow(g, order // p) != 1 for p in factors)

        if generator is None:
            generator = next(g for g in range(1, self.q) if primitive(g))
        elif not primitive(generator):
            raise FieldError(f"{generator:#x} is not a primitive element mod {modulus:#x}")
        self.generator = generator

        exp = np.zeros(2 * order + 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, generator, modulus)
        exp[order:2 * order] = exp[:order]
        exp[2 * order] = exp[0]
        self.exp = exp
        self.log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

        # trace is linear: tr(x) = parity of (x & mask), mask = traces of the basis
        trace_basis = [self._slow_trace(1 << i) for i in range(m)]
        tr_mask = sum(bit << i for i, bit in enumerate(trace_basis))
        self.trace_mask = tr_mask
        idx = np.arange(self.q, dtype=np.int64)
        bits = np.bitwise_count(idx & tr_mask).astype(np.int64) & 1
        self.trace_table = bits
        self._trace_list = bits.tolist()

    def _slow_pow(self, x: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = poly_mulmod(result, x, self.modulus)
            x = poly_mulmod(x, x, self.modulus)
            k >>= 1
        return result

    def _slow_trace(self, x: int) -> int:
        acc = 0
        y = x
        for _ in range(self.m):
            acc ^= y
            y = poly_mulmod(y, y, self.modulus)
        return acc

    def __repr__(self) -> str:
        return f"FieldSpec(m={self.m}, modulus={self.modulus:#x}, generator={self.generator:#x})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.m, self.modulus, self.generator) == (other.m, other.modulus, other.generator)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.modulus, self.generator))

    # -- scalar ops on ints

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise FieldError(f"{x!r} is not an element of GF(2^{self.m})")
        return x

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp_list[self._log_list[x] + self._log_list[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        order = self.q - 1
        return self._exp_list[(order - self._log_list[x]) % order]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        order = self.q - 1
        if x == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp_list[(self._log_list[x] * k) % order]

    def w(self, k: int) -> int:
        """The element ``w^k`` for the field's primitive element ``w``."""
        return self._exp_list[k % (self.q - 1)]

    def trace(self, x: int) -> int:
        return self._trace_list[x]

    def cube_root(self, x: int) -> int:
        """Unique cube root; only defined when ``m`` is odd."""
        order = self.q - 1
        if self.m % 2 == 0:
            raise FieldError("cube roots are not unique in GF(2^m) for even m")
        return self.pow(x, pow(3, -1, order)) if order > 1 else x

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized ops on int64 arrays

    def vmul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.exp[np.maximum(self.log[x], 0) + np.maximum(self.log[y], 0)]
        return np.where((x == 0) | (y == 0), 0, out)

    def vpow(self, x, k: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        order = self.q - 1
        out = self.exp[(np.maximum(self.log[x], 0) * k) % order]
        if k == 0:
            return np.ones_like(x)
        return np.where(x == 0, 0, out)

    def vtrace(self, x) -> np.ndarray:
        return self.trace_table[np.asarray(x, dtype=np.int64)]

    # -- root finding by exhaustive scan

    def _cubic_values(self, c2: int, c1: int, c0: int) -> np.ndarray:
        xs = np.arange(self.q, dtype=np.int64)
        x2 = self.vmul(xs, xs)
        return self.vmul(x2, xs) ^ self.vmul(x2, c2) ^ self.vmul(xs, c1) ^ c0

    def _cubic_roots(self, c2: int, c1: int, c0: int) -> CubicRoots:
        roots = np.flatnonzero(self._cubic_values(c2, c1, c0) == 0)
        # x is a repeated root iff the formal derivative x^2 + c1 vanishes too
        repeated = any(self.mul(int(r), int(r)) == c1 for r in roots)
        return CubicRoots(frozenset(int(r) for r in roots), repeated)

    def solve_cubic_depressed(self, p: int, r: int) -> CubicRoots:
        """Roots of ``x^3 + p x + r = 0``."""
        return self._cubic_roots(0, p, r)

    def solve_cubic_general(self, d1: int, d2: int, d3: int) -> CubicRoots:
        """Roots of ``x^3 + d1 x^2 + d2 x + d3 = 0``."""
        return self._cubic_roots(d1, d2, d3)

    def cubic_trace_criterion(self, d1: int, d2: int, d3: int) -> int | None:
        """``tr(delta + 1)`` with ``delta = (d2 + d1^2)^3 / (d3 + d1 d2)^2``.

        A value of 1 means the cubic has exactly one root in the field; 0 means
        zero or three distinct roots.  Returns None when ``d1^2 == d2`` or
        ``d3 == d1 d2``, where the criterion does not apply.
        """
        num = d2 ^ self.mul(d1, d1)
        den = d3 ^ self.mul(d1, d2)
        if num == 0 or den == 0:
            return None
        delta = self.div(self.pow(num, 3), self.mul(den, den))
        return self.trace(delta ^ 1)

    # -- element wrappers and notation

    def __call__(self, value: int | str) -> "FieldElement":
        if isinstance(value, str):
            value = self.parse(value)
        return FieldElement(self, self.check(value))

    def parse(self, token: str) -> int:
        """Parse ``"w^k"``, ``"wk"``, ``"w"``, a decimal int, or ``"0x.."`` hex bits."""
        token = token.strip().replace(" ", "")
        match = re.fullmatch(r"w(?:\^?(-?\d+))?", token)
        if match:
            return self.w(int(match.group(1)) if match.group(1) else 1)
        try:
            value = int(token, 0)
        except ValueError:
            raise FieldError(f"cannot parse field element {token!r}") from None
        return self.check(value)

    def format(self, x: int, style: str = "power") -> str:
        if style == "hex":
            return f"{x:#x}"
        if x == 0:
            return "0"
        return f"w^{self._log_list[x]}"

    def parse_many(self, tokens: str | Iterable[str]) -> list[int]:
        if isinstance(tokens, str):
            tokens = [t for t in tokens.split(",") if t.strip()]
        return [self.parse(t) for t in tokens]


@lru_cache(maxsize=None)
def get_field(m: int, modulus: int | None = None, generator: int | None = None) -> FieldSpec:
    """Cached :class:`FieldSpec` constructor."""
    return FieldSpec(m, modulus, generator)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    bits: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.bits
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def _wrap(self, bits: int) -> "FieldElement":
        return FieldElement(self.field, bits)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.bits ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.bits, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.bits, o))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.bits, k))

    def __neg__(self):
        return self

    def __int__(self) -> int:
        return self.bits

    def __bool__(self) -> bool:
        return self.bits != 0

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.bits))

    def trace(self) -> int:
        return self.field.trace(self.bits)

    def cube_root(self) -> "FieldElement":
        return self._wrap(self.field.cube_root(self.bits))

    def __repr__(self) -> str:
        return self.field.format(self.bits)
