"""Binary linear codes as lists of int bitsets.

Bit ``i`` of a word is coordinate ``i``.  Enumeration turns the generator
into numpy arrays of 64-bit limbs and walks the message space in blocks: the
span of the low rows is tabulated once, and the high rows are visited in Gray
order so each block costs one XOR of the table with a single codeword.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

DEFAULT_GUARD = 28
_TABLE_BITS = 16


class EnumerationGuardError(RuntimeError):
    """Raised when 2^k codewords would have to be visited for k above the guard."""


class DegenerateAugmentWarning(UserWarning):
    pass


# -- GF(2) row algebra --------------------------------------------------


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivot of a row is its lowest set bit, and every other row is cleared there.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for i, b in enumerate(basis):
                if (b >> p) & 1:
                    basis[i] = b ^ r
            basis.append(r)
            pivots.append(p)
    return basis, pivots


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows)[0])


def in_span(word: int, rows: Sequence[int]) -> bool:
    basis, pivots = rref(rows)
    for b, p in zip(basis, pivots):
        if (word >> p) & 1:
            word ^= b
    return word == 0


def same_row_space(a: Sequence[int], b: Sequence[int]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


def nullspace(rows: Sequence[int], n: int) -> list[int]:
    """Basis of ``{x : popcount(x & r) even for all r}`` in GF(2)^n."""
    basis, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if (b >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def delete_positions(word: int, n: int, positions: Iterable[int]) -> int:
    drop = set(positions)
    out = 0
    j = 0
    for i in range(n):
        if i in drop:
            continue
        if (word >> i) & 1:
            out |= 1 << j
        j += 1
    return out


def weight(word: int) -> int:
    return word.bit_count()


# -- codes ----------------------------------------------------------------


@dataclass(frozen=True)
class BinaryCode:
    """Binary ``[n, k]`` code spanned by ``generator`` (independent rows).

    ``coordinate_labels`` optionally names each position, e.g. the field
    element a coordinate is evaluated at.
    """

    n: int
    generator: tuple[int, ...]
    coordinate_labels: tuple | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generator", tuple(int(g) for g in self.generator))
        if any(g >> self.n for g in self.generator):
            raise ValueError("generator row wider than the code length")
        if rank(self.generator) != len(self.generator):
            raise ValueError("generator rows are linearly dependent")
        if self.coordinate_labels is not None:
            labels = tuple(self.coordinate_labels)
            if len(labels) != self.n:
                raise ValueError("need exactly one label per coordinate")
            object.__setattr__(self, "coordinate_labels", labels)

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int], **kwargs) -> "BinaryCode":
        """Build from a possibly dependent spanning set."""
        return cls(n, tuple(rref(rows)[0]), **kwargs)

    @classmethod
    def full_space(cls, n: int) -> "BinaryCode":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "BinaryCode":
        return cls(n, ())

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def all_ones(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, word: int) -> bool:
        return in_span(word, self.generator)

    def encode(self, message: int) -> int:
        word = 0
        for i, g in enumerate(self.generator):
            if (message >> i) & 1:
                word ^= g
        return word

    def same_code(self, other: "BinaryCode") -> bool:
        return self.n == other.n and same_row_space(self.generator, other.generator)

    def position(self, label) -> int:
        if self.coordinate_labels is None:
            raise ValueError("code has no coordinate labels")
        return self.coordinate_labels.index(label)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<BinaryCode{tag} [{self.n}, {self.k}]>"


def dual(code: BinaryCode) -> BinaryCode:
    return BinaryCode(code.n, tuple(nullspace(code.generator, code.n)),
                      code.coordinate_labels, name=f"dual({code.name})" if code.name else "")


def augment(code: BinaryCode) -> BinaryCode:
    """Add the all-ones word to the generator.

    If the code already contains it, the same code comes back and a
    :class:`DegenerateAugmentWarning` is emitted.
    """
    ones = code.all_ones
    if ones in code:
        warnings.warn(f"{code!r} already contains the all-ones word", DegenerateAugmentWarning,
                      stacklevel=2)
        return code
    return BinaryCode(code.n, code.generator + (ones,), code.coordinate_labels, code.name)


def extend(code: BinaryCode, front: bool = False, label=None) -> BinaryCode:
    """Append an overall parity coordinate (at position 0 when ``front``)."""
    rows = []
    for g in code.generator:
        parity = g.bit_count() & 1
        rows.append((g << 1) | parity if front else g | (parity << code.n))
    labels = None
    if code.coordinate_labels is not None:
        labels = ((label,) + code.coordinate_labels) if front else (code.coordinate_labels + (label,))
    return BinaryCode(code.n + 1, tuple(rows), labels, code.name)


def _normalize_positions(code: BinaryCode, positions: Iterable[int]) -> list[int]:
    ps = sorted(set(int(p) for p in positions))
    if ps and not (0 <= ps[0] and ps[-1] < code.n):
        raise ValueError(f"positions {ps} outside 0..{code.n - 1}")
    return ps


def _drop_labels(code: BinaryCode, ps: list[int]):
    if code.coordinate_labels is None:
        return None
    drop = set(ps)
    return tuple(lab for i, lab in enumerate(code.coordinate_labels) if i not in drop)


def puncture(code: BinaryCode, positions: Iterable[int]) -> BinaryCode:
    ps = _normalize_positions(code, positions)
    rows = [delete_positions(g, code.n, ps) for g in code.generator]
    return BinaryCode.from_rows(code.n - len(ps), rows, coordinate_labels=_drop_labels(code, ps))


def shorten(code: BinaryCode, positions: Iterable[int]) -> BinaryCode:
    """Codewords vanishing on ``positions``, with those positions deleted."""
    ps = _normalize_positions(code, positions)
    rows = list(code.generator)
    for p in ps:
        pivot = next((i for i, r in enumerate(rows) if (r >> p) & 1), None)
        if pivot is None:
            continue
        pr = rows.pop(pivot)
        rows = [r ^ pr if (r >> p) & 1 else r for r in rows]
    rows = [delete_positions(r, code.n, ps) for r in rows]
    return BinaryCode(code.n - len(ps), tuple(rows), _drop_labels(code, ps))


# -- weight distributions ---------------------------------------------------


@dataclass
class WeightDistribution:
    n: int
    counts: dict[int, int]
    k: int | None = None

    def __post_init__(self):
        self.counts = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.n == other.n and self.counts == other.counts

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w in self.counts if w]

    @property
    def min_distance(self) -> int | None:
        ws = self.nonzero_weights
        return ws[0] if ws else None

    def as_list(self) -> list[int]:
        return [self[i] for i in range(self.n + 1)]

    def is_symmetric(self) -> bool:
        return all(self[w] == self[self.n - w] for w in self.counts)

    def enumerator(self, var: str = "z") -> str:
        terms = []
        for w, c in self.counts.items():
            if w == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c if c != 1 else ''}{var}^{w}")
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k,
                "counts": {str(w): str(c) for w, c in self.counts.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WeightDistribution":
        return cls(int(data["n"]), {int(w): int(c) for w, c in data["counts"].items()},
                   None if data.get("k") is None else int(data["k"]))

    @classmethod
    def from_json(cls, text: str) -> "WeightDistribution":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"WeightDistribution(n={self.n}, {self.enumerator()})"


def _limbs(word: int, n_limbs: int) -> np.ndarray:
    return np.array([(word >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(n_limbs)],
                    dtype=np.uint64)


def _span_table(rows: Sequence[int], n_limbs: int) -> np.ndarray:
    table = np.zeros((1, n_limbs), dtype=np.uint64)
    for r in rows:
        table = np.concatenate([table, table ^ _limbs(r, n_limbs)])
    return table


def _weights(table: np.ndarray) -> np.ndarray:
    return np.bitwise_count(table).sum(axis=1, dtype=np.int64)


def _check_guard(k: int, guard: int | None):
    limit = DEFAULT_GUARD if guard is None else guard
    if k > limit:
        raise EnumerationGuardError(
            f"refusing to enumerate 2^{k} codewords (guard k <= {limit}); raise the guard explicitly")


def _gray_blocks(code: BinaryCode):
    """Split the generator into a tabulated low span and Gray-ordered high offsets."""
    n_limbs = max(1, (code.n + 63) // 64)
    low, high = code.generator[:_TABLE_BITS], code.generator[_TABLE_BITS:]
    table = _span_table(low, n_limbs)
    offsets = [0]
    acc = 0
    for i in range(1, 1 << len(high)):
        # position of the bit that flips between gray(i-1) and gray(i)
        acc ^= high[(i & -i).bit_length() - 1]
        offsets.append(acc)
    return table, offsets, n_limbs


def iter_codeword_blocks(code: BinaryCode, guard: int | None = None):
    """Yield all codewords as ``(rows, n_limbs)`` uint64 blocks."""
    _check_guard(code.k, guard)
    table, offsets, n_limbs = _gray_blocks(code)
    for off in offsets:
        yield table ^ _limbs(off, n_limbs) if off else table


def enumerate_weight_distribution(code: BinaryCode, guard: int | None = None,
                                  threads: int = 1) -> WeightDistribution:
    """Exact weight distribution by visiting every codeword."""
    _check_guard(code.k, guard)
    table, offsets, n_limbs = _gray_blocks(code)

    def hist(chunk):
        acc = np.zeros(code.n + 1, dtype=np.int64)
        for off in chunk:
            block = table ^ _limbs(off, n_limbs) if off else table
            acc += np.bincount(_weights(block), minlength=code.n + 1)
        return acc

    if threads > 1 and len(offsets) > 1:
        chunks = [offsets[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(threads) as pool:
            total = sum(pool.map(hist, chunks))
    else:
        total = hist(offsets)
    return WeightDistribution(code.n, {w: int(c) for w, c in enumerate(total)}, code.k)


def codeword_limbs_of_weight(code: BinaryCode, w: int, guard: int | None = None) -> np.ndarray:
    """All weight-``w`` codewords as a ``(count, n_limbs)`` uint64 array."""
    parts = [blk[_weights(blk) == w] for blk in iter_codeword_blocks(code, guard)]
    return np.concatenate(parts) if parts else np.zeros((0, 1), dtype=np.uint64)


def limbs_to_int(row: np.ndarray) -> int:
    return sum(int(x) << (64 * i) for i, x in enumerate(row))


def codewords_of_weight(code: BinaryCode, w: int, guard: int | None = None) -> list[int]:
    return [limbs_to_int(r) for r in codeword_limbs_of_weight(code, w, guard)]


def limbs_to_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Unpack ``(count, n_limbs)`` uint64 words to a ``(count, n)`` 0/1 uint8 matrix."""
    as_bytes = words.astype("<u8").view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n]


# -- MacWilliams and Pless ----------------------------------------------------


def krawtchouk(n: int, j: int, i: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams_dual_distribution(wd: WeightDistribution, k: int | None = None) -> WeightDistribution:
    """Dual distribution ``B_j = 2^-k sum_i A_i K_j(i)`` in exact integers."""
    k = wd.k if k is None else k
    if k is None:
        k = wd.total.bit_length() - 1
    if wd.total != 1 << k:
        raise ValueError(f"distribution totals {wd.total}, not 2^{k}")
    n = wd.n
    out = {}
    for j in range(n + 1):
        s = sum(a * krawtchouk(n, j, i) for i, a in wd.counts.items())
        b, rem = divmod(s, 1 << k)
        if rem or b < 0:
            raise ValueError(f"MacWilliams transform is not a distribution at weight {j}: {Fraction(s, 1 << k)}")
        out[j] = b
    return WeightDistribution(n, out, n - k)


@lru_cache(maxsize=None)
def stirling2(t: int, j: int) -> int:
    """Stirling number of the second kind via ``(1/j!) sum (-1)^(j-i) C(j,i) i^t``."""
    total = sum((-1) ** (j - i) * comb(j, i) * i ** t for i in range(j + 1))
    value, rem = divmod(total, factorial(j))
    assert rem == 0
    return value


def pless_moment_sides(wd: WeightDistribution, dual_prefix: Sequence[int], k: int, n: int,
                       t: int) -> tuple[Fraction, Fraction]:
    """Both sides of the ``t``-th binary Pless power moment."""
    if len(dual_prefix) < t + 1:
        raise ValueError(f"need A_0..A_{t} of the dual, got {len(dual_prefix)} values")
    lhs = Fraction(sum(i ** t * a for i, a in wd.counts.items()))
    rhs = Fraction(0)
    for i in range(t + 1):
        if not dual_prefix[i]:
            continue
        inner = sum(factorial(j) * stirling2(t, j) * Fraction(2) ** (k - j) * comb(n - i, n - j)
                    for j in range(i, min(t, n) + 1))
        rhs += (-1) ** i * dual_prefix[i] * inner
    return lhs, rhs


def pless_moment_check(wd: WeightDistribution, dual_prefix: Sequence[int], k: int, n: int,
                       t: int) -> bool:
    lhs, rhs = pless_moment_sides(wd, dual_prefix, k, n, t)
    return lhs == rhs
