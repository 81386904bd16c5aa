"""The cyclic code family with zeros {1, 2^e+1, 2^{2e}+1} and its closed forms.

Coordinates of ``C^(e)`` are ``w^0, ..., w^{q-2}``; the extended augmented
code puts ``x = 0`` first: ``0, w^0, ..., w^{q-2}``.  Closed-form weight
tables are evaluated in exact rationals and every multiplicity must come out
a nonnegative integer.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .gf2m import FieldSpec
from .lincode import BinaryCode, WeightDistribution, rank


class InvalidParameters(ValueError):
    pass


class FormulaError(ArithmeticError):
    """A closed form evaluated to a non-integral or negative count."""


class FormulaWarning(UserWarning):
    pass


EVEN_M_REMARK = ("shortened codes for even m are not covered: their weight distributions "
                 "for #T >= 2 are not determined by these methods")


@dataclass(frozen=True)
class FamilyParams:
    m: int
    e: int

    def __post_init__(self):
        m, e = self.m, self.e
        if m < 1 or not 1 <= e <= m - 1:
            raise InvalidParameters(f"need 1 <= e <= m-1, got m={m}, e={e}")
        if 3 * e in (m, 2 * m):
            raise InvalidParameters(f"e={e} is excluded for m={m} (e in {{m/3, 2m/3}})")
        if (m // gcd(m, e)) % 2 == 0:
            raise InvalidParameters(f"m/gcd(m,e) = {m // gcd(m, e)} is even")

    @property
    def d(self) -> int:
        return gcd(self.m, self.e)

    @property
    def exponents(self) -> tuple[int, int, int]:
        """Exponents paired with ``a``, ``b``, ``c`` in the trace form."""
        return (2 ** (2 * self.e) + 1, 2 ** self.e + 1, 1)


def _trace_rows(field: FieldSpec, xs: np.ndarray, exponents) -> list[int]:
    """One row per (exponent, basis coefficient): bit j = tr(beta * xs[j]^exp)."""
    rows = []
    for k in exponents:
        powers = field.vpow(xs, k)
        for i in range(field.m):
            bits = field.vtrace(field.vmul(powers, 1 << i))
            rows.append(_pack(bits))
    return rows


def _pack(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


def _field_params(field: FieldSpec, e: int) -> FamilyParams:
    return FamilyParams(field.m, e)


def build_Ce(field: FieldSpec, e: int) -> BinaryCode:
    """``C^(e)`` of length ``q - 1``; dimension is checked to be ``3m``."""
    params = _field_params(field, e)
    xs = field.exp[: field.q - 1]
    rows = _trace_rows(field, xs, params.exponents)
    if rank(rows) != 3 * field.m:
        raise InvalidParameters(f"trace rows have rank {rank(rows)} != 3m for m={field.m}, e={e}")
    labels = tuple(int(x) for x in xs)
    return BinaryCode(field.q - 1, tuple(rows), labels, name=f"C^({e}) m={field.m}")


def build_extended_augmented(field: FieldSpec, e: int) -> BinaryCode:
    """Extended augmented code of length ``q`` in trace form, dimension ``3m + 1``."""
    params = _field_params(field, e)
    xs = np.concatenate([[0], field.exp[: field.q - 1]])
    rows = _trace_rows(field, xs, params.exponents) + [(1 << field.q) - 1]
    if rank(rows) != 3 * field.m + 1:
        raise InvalidParameters(f"rank {rank(rows)} != 3m+1 for m={field.m}, e={e}")
    labels = tuple(int(x) for x in xs)
    return BinaryCode(field.q, tuple(rows), labels, name=f"ext-aug C^({e}) m={field.m}")


def trace_codeword(field: FieldSpec, e: int, a: int, b: int, c: int, h: int | None = None) -> int:
    """Codeword for ``(a, b, c)`` of ``C^(e)``, or for ``(a, b, c, h)`` of the extended code."""
    params = _field_params(field, e)
    if h is None:
        xs = field.exp[: field.q - 1]
    else:
        xs = np.concatenate([[0], field.exp[: field.q - 1]])
    k1, k2, k3 = params.exponents
    val = (field.vmul(field.vpow(xs, k1), a) ^ field.vmul(field.vpow(xs, k2), b)
           ^ field.vmul(field.vpow(xs, k3), c) ^ (h or 0))
    return _pack(field.vtrace(val))


# -- exact closed forms -------------------------------------------------------


def p2(num: int, den: int = 1) -> Fraction:
    """Exact ``2^(num/den)``; only integral exponents are rational."""
    if num % den:
        raise FormulaError(f"2^({num}/{den}) is irrational")
    return Fraction(2) ** (num // den)


def _finish(n: int, k: int, table: dict[int, Fraction], what: str) -> WeightDistribution:
    counts = {}
    for w, value in table.items():
        if value.denominator != 1 or value < 0:
            raise FormulaError(f"{what}: multiplicity at weight {w} evaluates to {value}")
        counts[w] = counts.get(w, 0) + int(value)
    wd = WeightDistribution(n, counts, k)
    if wd.total != 1 << k:
        raise FormulaError(f"{what}: multiplicities sum to {wd.total}, expected 2^{k}")
    return wd


def predicted_wd_base(m: int, e: int) -> WeightDistribution:
    """Five-weight distribution of ``C^(e)`` with ``d = gcd(m, e)``."""
    d = FamilyParams(m, e).d
    q = p2(m)
    w0 = p2(m - 1)
    lo, hi = p2(m + d - 2, 2), p2(m + 3 * d - 2, 2)
    inner = p2(m + 2 * d) - q - p2(m - d) + p2(2 * d)
    den = p2(2 * d) - 1
    table = {
        0: Fraction(1),
        int(w0 - hi): (p2(m - 3 * d - 1) + p2(m - 3 * d - 2, 2)) * (p2(m - d) - 1) * (q - 1) / den,
        int(w0 - lo): (p2(m - d - 1) + p2(m - d - 2, 2)) * (q - 1) * inner / den,
        int(w0): (q - 1) * (p2(2 * m) - p2(2 * m - d) + p2(2 * m - 4 * d) + q - p2(m - d)
                            - p2(m - 3 * d) + 1),
        int(w0 + lo): (p2(m - d - 1) - p2(m - d - 2, 2)) * (q - 1) * inner / den,
        int(w0 + hi): (p2(m - 3 * d - 1) - p2(m - 3 * d - 2, 2)) * (p2(m - d) - 1) * (q - 1) / den,
    }
    return _finish(2 ** m - 1, 3 * m, table, f"base table m={m} e={e}")


def predicted_wd_extended(m: int, e: int) -> WeightDistribution:
    """Distribution of the extended augmented ``[q, 3m+1]`` code."""
    d = FamilyParams(m, e).d
    q = p2(m)
    w0 = p2(m - 1)
    lo, hi = p2(m + d - 2, 2), p2(m + 3 * d - 2, 2)
    inner = p2(m + 2 * d) - q - p2(m - d) + p2(2 * d)
    den = p2(2 * d) - 1
    outer = p2(m - 3 * d) * (p2(m - d) - 1) * (q - 1) / den
    middle = p2(m - d) * (q - 1) * inner / den
    table = {
        0: Fraction(1),
        int(w0 - hi): outer,
        int(w0 - lo): middle,
        int(w0): 2 * (q - 1) * (p2(2 * m) - p2(2 * m - d) + p2(2 * m - 4 * d) + q - p2(m - d)
                                - p2(m - 3 * d) + 1),
        int(w0 + lo): middle,
        int(w0 + hi): outer,
        int(q): Fraction(1),
    }
    return _finish(2 ** m, 3 * m + 1, table, f"extended table m={m} e={e}")


def predicted_dual_low_weights(m: int, d: int, strict: bool = True) -> dict[int, int | Fraction]:
    """``A_4, A_6, A_8`` of the dual of the extended augmented code.

    A non-integral value raises ``FormulaError``; with ``strict=False`` it is
    returned as a ``Fraction`` with a warning instead.  The printed ``A_6``
    form does this for some ``d > 1`` (e.g. m=10, d=2).
    """
    q = p2(m)
    pd = p2(d)
    a4 = (q - 1) * (p2(d + m) - p2(1 + m)) / 24
    a6 = -Fraction(1, 45) * p2(m - 4) * (pd - 2) * (-32 + p2(2 + d) + p2(1 + 2 * d) + p2(3 * d)
                                                    - q * (3 * pd + p2(2 * d) - 8))
    a8 = Fraction(1, 315) * p2(m - 7) * (q - 1) * (
        p2(3 * m) - 16 * (213 - 77 * p2(1 + d) + 7 * p2(4 * d))
        + p2(2 * m) * (-132 + 91 * p2(1 + d) - 27 * p2(2 * d) - 27 * p2(3 * d) + p2(4 * d) + p2(6 * d))
        - q * (-1380 + 357 * p2(2 + d) - 7 * p2(4 + 3 * d) - 7 * p2(4 + 2 * d) - 7 * p2(2 + 4 * d)
               + p2(5 * d) + p2(7 * d)))
    out = {}
    for w, v in ((4, a4), (6, a6), (8, a8)):
        if v.denominator != 1 or v < 0:
            msg = f"dual A_{w} for m={m}, d={d} evaluates to {v}"
            if strict:
                raise FormulaError(msg)
            warnings.warn(msg, FormulaWarning, stacklevel=2)
            out[w] = v
            continue
        out[w] = int(v)
    if d == 1:
        if out[4] or out[6] or out[8] <= 0:
            raise FormulaError(f"d=1 should give A_4 = A_6 = 0 < A_8, got {out}")
        if out[8] != dual_min_weight_count_d1(m):
            raise FormulaError(f"general A_8 {out[8]} disagrees with the d=1 form")
    elif not out[4] > 0:
        raise FormulaError(f"d={d} should give A_4 > 0, got {out[4]}")
    return out


def dual_min_weight_count_d1(m: int) -> int:
    """``A_8`` of the dual extended augmented code when ``gcd(m, e) = 1``."""
    q = p2(m)
    v = Fraction(1, 315) * p2(m - 7) * (q - 1) * (-272 + 39 * p2(2 + m) - 3 * p2(2 * m + 2) + p2(3 * m))
    if v.denominator != 1:
        raise FormulaError(f"A_8 for m={m} evaluates to {v}")
    return int(v)


def shortened_weights(m: int) -> tuple[int, int, int, int, int]:
    w0 = 2 ** (m - 1)
    return (w0 - 2 ** ((m + 1) // 2), w0 - 2 ** ((m - 1) // 2), w0,
            w0 + 2 ** ((m - 1) // 2), w0 + 2 ** ((m + 1) // 2))


def _table_t1(m: int):
    q = p2(m)
    return (
        p2(m - 13, 2) * (q - 2) * (-8 + 3 * p2(m + 3, 2) + p2(m + 3) + p2(3 * m + 1, 2)) / 3,
        p2(m - 9, 2) * (8 + 5 * q) * (-4 + p2(m + 2) + p2(3 * m + 1, 2)) / 3,
        (q - 2) * (16 + 3 * p2(m + 1) + 9 * p2(2 * m)) / 32,
        p2(m - 9, 2) * (8 + 5 * q) * (4 - p2(m + 2) + p2(3 * m + 1, 2)) / 3,
        p2(m - 13, 2) * (q - 2) * (8 + 3 * p2(m + 3, 2) - p2(m + 3) + p2(3 * m + 1, 2)) / 3,
    )


def _table_t2(m: int):
    q = p2(m)
    return (
        p2(m - 15, 2) * (32 + 9 * p2(3 * (m + 1), 2) - p2(m + 4) - 5 * p2(m + 7, 2)
                         + p2(1 + 5 * m, 2) + 3 * p2(2 * m + 2)) / 3,
        p2(m - 11, 2) * (8 + 5 * q) * (-8 + 3 * p2(m + 1) + p2(m + 3, 2) + p2(1 + 3 * m, 2)) / 3,
        (q - 4) * (16 + 3 * p2(m + 1) + 9 * p2(2 * m)) / 64,
        p2(m - 11, 2) * (8 + 5 * q) * (8 - 3 * p2(m + 1) + p2(m + 3, 2) + p2(1 + 3 * m, 2)) / 3,
        p2(m - 15, 2) * (-32 + 9 * p2(3 * (m + 1), 2) + p2(m + 4) - 5 * p2(m + 7, 2)
                         + p2(1 + 5 * m, 2) - 3 * p2(2 * m + 2)) / 3,
    )


def _table_t3(m: int, N: int):
    r = p2(3 * (1 + m), 2)
    s = p2(1 + 5 * m, 2)
    u = p2(7 + m, 2)
    return (
        p2(m - 17, 2) * (64 + 19 * r + p2(5 + m) + s + p2(2 * m + 4) + u * (-7 + 3 * N)) / 3,
        p2(m - 13, 2) * (-128 + 17 * r - p2(4 + m) + 5 * p2(3 + 2 * m) + 5 * s + u * (1 - 3 * N)) / 3,
        -1 + 9 * p2(3 * m - 7) - 29 * p2(2 * m - 6) + p2(m - 4) * (1 + 3 * N),
        p2(m - 13, 2) * (128 + 17 * r + p2(4 + m) - 5 * p2(3 + 2 * m) + 5 * s + u * (1 - 3 * N)) / 3,
        p2(m - 17, 2) * (-64 + 19 * r - p2(5 + m) + s - p2(2 * m + 4) + u * (-7 + 3 * N)) / 3,
    )


def _table_t4(m: int, N: int, Nbar: int):
    r = p2(3 * (m + 1), 2)
    s = p2(5 * m + 1, 2)
    u = p2(m + 7, 2)
    return (
        p2(m - 19, 2) * (128 + 31 * r + s + 5 * p2(2 * m + 2) + p2(m + 3) * (17 + 3 * Nbar)
                         + u * (15 * Nbar + 3 * N - 1)) / 3,
        p2(m - 15, 2) * (-256 + 29 * r + 25 * p2(1 + 2 * m) + 5 * s - p2(m + 2) * (17 + 3 * Nbar)
                         - u * (11 + 15 * Nbar + 3 * N)) / 3,
        -1 + 9 * p2(3 * m - 8) - 49 * p2(2 * m - 7) + 3 * p2(m - 5) * (5 + 5 * Nbar + N),
        p2(m - 15, 2) * (256 + 29 * r - 25 * p2(1 + 2 * m) + 5 * s + p2(m + 2) * (17 + 3 * Nbar)
                         - u * (11 + 15 * Nbar + 3 * N)) / 3,
        p2(m - 19, 2) * (-128 + 31 * r + s - 5 * p2(2 * m + 2) - p2(m + 3) * (17 + 3 * Nbar)
                         + u * (15 * Nbar + 3 * N - 1)) / 3,
    )


def _table_t4_trace_one(m: int, N: int):
    r = p2(3 * m + 3, 2)
    s = p2(5 * m + 1, 2)
    u = p2(m + 7, 2)
    return (
        p2(m - 19, 2) * (128 - u + 17 * p2(m + 3) + 31 * r + 5 * p2(2 + 2 * m) + s + 3 * u * N) / 3,
        p2(m - 15, 2) * (-256 - 11 * u - 17 * p2(m + 2) + 29 * r + 25 * p2(1 + 2 * m) + 5 * s
                         - 3 * u * N) / 3,
        -1 + 9 * p2(3 * m - 8) + 15 * p2(m - 5) - 49 * p2(2 * m - 7) + 3 * p2(m - 5) * N,
        p2(m - 15, 2) * (256 - 11 * u + 17 * p2(m + 2) + 29 * r - 25 * p2(1 + 2 * m) + 5 * s
                         - 3 * u * N) / 3,
        p2(m - 19, 2) * (-128 - u - 17 * p2(m + 3) + 31 * r - 5 * p2(2 + 2 * m) + s + 3 * u * N) / 3,
    )


def predicted_wd_shortened(m: int, t: int, N: int | None = None, Nbar: int | None = None,
                           trace_one: bool = False) -> WeightDistribution:
    """Distribution of ``C_T`` for ``#T = t`` in 1..4 when ``gcd(m, e) = 1``, ``m`` odd.

    ``N`` is ``A_4`` of the dual of ``C_T`` (needed for t = 3, 4); ``Nbar`` is
    needed for ``t = 4``.  ``trace_one`` selects the specialised t = 4 table for
    the case where the cubic criterion forces ``Nbar = 0``.
    """
    if m % 2 == 0:
        raise InvalidParameters(EVEN_M_REMARK)
    if t == 1:
        mult = _table_t1(m)
    elif t == 2:
        mult = _table_t2(m)
    elif t == 3:
        if N is None:
            raise ValueError("t = 3 needs N")
        mult = _table_t3(m, N)
    elif t == 4:
        if N is None:
            raise ValueError("t = 4 needs N")
        if trace_one:
            if Nbar not in (None, 0):
                raise ValueError("the trace-one table assumes Nbar = 0")
            mult = _table_t4_trace_one(m, N)
        else:
            if Nbar is None:
                raise ValueError("t = 4 needs Nbar")
            mult = _table_t4(m, N, Nbar)
    else:
        raise ValueError(f"no closed form for t = {t}")
    table = {0: Fraction(1)}
    table.update(zip(shortened_weights(m), mult))
    return _finish(2 ** m - 1 - t, 3 * m - t, table, f"shortened table m={m} t={t}")
